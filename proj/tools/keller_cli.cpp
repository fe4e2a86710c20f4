#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "keller/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;       // mathematical "no"
constexpr int kExitUsage = 2;          // bad input or flags
constexpr int kExitContradiction = 3;  // a paper bound failed; must never happen

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<keller::Rational> parse_point(const std::string& csv) {
    std::vector<keller::Rational> point;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) point.push_back(keller::parse_rational(tok));
    if (point.empty()) throw std::invalid_argument("empty point");
    return point;
}

int cmd_check_keller(const std::string& path) {
    auto f = keller::PolyMap::parse(read_file(path));
    auto res = keller::is_keller(f);
    std::cout << "keller: " << (res.keller ? "true" : "false") << "\n"
              << "det: " << res.det.to_string() << "\n";
    return res.keller ? kExitOk : kExitNegative;
}

int cmd_invert(const std::string& path, int max_degree) {
    auto f = keller::PolyMap::parse(read_file(path));
    unsigned bound;
    if (max_degree > 0) {
        bound = static_cast<unsigned>(max_degree);
    } else {
        // default: the BCW bound (deg F)^(n-1)
        unsigned deg = std::max(f.degree(), 1u);
        bound = static_cast<unsigned>(
            keller::ipow(static_cast<long>(deg), f.nvars() - 1));
    }
    auto inv = keller::invert_fixed_point(f, bound);
    std::cout << inv.inverse_map.to_text();
    return kExitOk;
}

int cmd_invert_t3(const std::string& path, bool report_only) {
    auto f = keller::PolyMap::parse(read_file(path));
    auto [inv, report] = keller::invert_theorem3(f);
    if (!report_only) std::cout << inv.inverse_map.to_text();
    std::cout << report.to_text();
    return kExitOk;
}

int cmd_conjugate(const std::string& path) {
    auto f = keller::PolyMap::parse(read_file(path));
    auto conj = keller::conjugate_normalize(f);
    std::cout << "r: " << conj.r << "\n"
              << "T:\n"
              << conj.T.to_string() << conj.G.to_text();
    return kExitOk;
}

int cmd_line_cert(const std::string& path, const std::string& point_csv) {
    auto f = keller::PolyMap::parse(read_file(path));
    auto cert = keller::line_injectivity_certificate(f, parse_point(point_csv));
    std::cout << "point: " << point_csv << "\n"
              << "nilpotent: " << (cert.nilpotent ? "true" : "false") << "\n"
              << "nilpotency_witness: " << cert.nilpotency_witness << "\n"
              << "det_identity_holds: " << (cert.det_identity_holds ? "true" : "false")
              << "\n"
              << "gcd_root_check: " << (cert.gcd_root_check ? "true" : "false") << "\n"
              << "valid: " << (cert.valid ? "true" : "false") << "\n"
              << "failed_clause: " << (cert.valid ? "none" : cert.failed_clause) << "\n";
    return cert.valid ? kExitOk : kExitNegative;
}

int cmd_expand(const std::string& path) {
    auto spec = keller::DruzkowskiSpec::parse(read_file(path));
    std::cout << keller::expand(spec).to_text();
    return kExitOk;
}

int cmd_gen(const std::string& kind, int n, int d, std::uint64_t seed, int count,
            const std::string& out_dir) {
    if (kind != "triangular-keller" && kind != "triangular-druzkowski")
        throw std::invalid_argument("unknown generator kind: " + kind);
    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
        std::string name = kind + "-n" + std::to_string(n) + "-d" + std::to_string(d) +
                           "-s" + std::to_string(seed) + "-" + std::to_string(i) +
                           ".map";
        std::ofstream out(std::filesystem::path(out_dir) / name);
        if (!out) throw std::invalid_argument("cannot write into: " + out_dir);
        if (kind == "triangular-keller")
            out << keller::gen_triangular_keller(n, d, seed + i).to_text();
        else
            out << keller::gen_triangular_druzkowski(n, d, seed + i).to_text();
        std::cout << name << "\n";
    }
    return kExitOk;
}

int cmd_verify_suite(std::uint64_t seed, int count) {
    keller::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.keller_maps = count;
    cfg.druzkowski_specs = count;
    cfg.corollary4_specs = count;
    cfg.theorem1_maps = std::min(count, 50);
    cfg.lemma2_maps = count;
    auto outcomes = keller::run_verification_suite(cfg);
    bool contradiction = false, failed = false;
    for (const auto& o : outcomes) {
        std::cout << o.name << ": " << (o.passed ? "pass" : "FAIL") << " (" << o.detail
                  << ")\n";
        contradiction |= o.contradiction;
        failed |= !o.passed;
    }
    if (contradiction) return kExitContradiction;
    return failed ? kExitNegative : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for polynomial maps F = x + H: Keller checks, "
                 "formal inversion, degree bounds and injectivity certificates"};
    app.require_subcommand(1);

    std::string map_file, spec_file, point_csv, kind, out_dir = ".";
    int max_degree = 0, n = 3, d = 3, count = 10;
    std::uint64_t seed = 7;
    bool report_only = false;

    auto* check = app.add_subcommand("check-keller", "Jacobian determinant check");
    check->add_option("map", map_file, "map file")->required();

    auto* invert = app.add_subcommand("invert", "fixed-point formal inversion");
    invert->add_option("map", map_file, "map file")->required();
    invert->add_option("--max-degree", max_degree,
                       "truncation bound (default (deg F)^(n-1))");

    auto* t3 = app.add_subcommand("invert-t3", "r-variable inversion with bound report");
    t3->add_option("map", map_file, "map file")->required();

    auto* bound = app.add_subcommand("bound", "degree bound report only");
    bound->add_option("map", map_file, "map file")->required();

    auto* conj = app.add_subcommand("conjugate", "kernel-normalizing conjugation");
    conj->add_option("map", map_file, "map file")->required();

    auto* cert = app.add_subcommand("line-cert", "line-injectivity certificate");
    cert->add_option("map", map_file, "map file")->required();
    cert->add_option("--point", point_csv, "rational point a1,a2,...")->required();

    auto* expand = app.add_subcommand("expand-druzkowski", "spec file to map file");
    expand->add_option("spec", spec_file, "druzkowski spec file")->required();

    auto* gen = app.add_subcommand("gen", "write a deterministic corpus");
    gen->add_option("--kind", kind, "triangular-keller | triangular-druzkowski")
        ->required();
    gen->add_option("-n", n, "dimension");
    gen->add_option("-d", d, "degree");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--count", count, "number of files");
    gen->add_option("--out", out_dir, "output directory");

    auto* suite = app.add_subcommand("verify-suite", "run the full property suite");
    suite->add_option("--seed", seed, "corpus seed");
    suite->add_option("--count", count, "maps per corpus family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check_keller(map_file);
        if (invert->parsed()) return cmd_invert(map_file, max_degree);
        if (t3->parsed()) return cmd_invert_t3(map_file, false);
        if (bound->parsed()) return cmd_invert_t3(map_file, true);
        if (conj->parsed()) return cmd_conjugate(map_file);
        if (cert->parsed()) return cmd_line_cert(map_file, point_csv);
        if (expand->parsed()) return cmd_expand(spec_file);
        if (gen->parsed()) return cmd_gen(kind, n, d, seed, count, out_dir);
        if (suite->parsed()) return cmd_verify_suite(seed, count);
    } catch (const keller::TheoremContradiction& e) {
        std::cerr << "THEOREM CONTRADICTION: " << e.what() << "\n";
        return kExitContradiction;
    } catch (const keller::NoPolynomialInverse& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
