#include "keller/suite.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace keller {

namespace {

constexpr int kCombos[][2] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}, {4, 3}};

long rand_int(std::mt19937_64& eng, long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<Rational> random_nonzero_point(std::mt19937_64& eng, int n) {
    while (true) {
        std::vector<Rational> a;
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            Rational q = make_rational(rand_int(eng, -5, 5), rand_int(eng, 1, 4));
            if (q != 0) nonzero = true;
            a.push_back(std::move(q));
        }
        if (nonzero) return a;
    }
}

std::vector<Rational> evaluate_map(const PolyMap& f, const std::vector<Rational>& p) {
    std::vector<Rational> out;
    for (int i = 0; i < f.size(); ++i) out.push_back(f[i].evaluate(p));
    return out;
}

CriterionOutcome run_guarded(const std::string& name,
                             const std::function<std::string()>& body) {
    CriterionOutcome o;
    o.name = name;
    try {
        o.detail = body();
        o.passed = true;
    } catch (const TheoremContradiction& e) {
        o.contradiction = true;
        o.detail = std::string("theorem contradiction: ") + e.what();
    } catch (const std::exception& e) {
        o.detail = e.what();
    }
    return o;
}

// ---- criterion bodies ------------------------------------------------------

// Independent oracle for the tight d^r instance: back-substitution by hand.
// F = (x1 + (x2+x3)^3, x2 + x3^3, x3); solving from the last coordinate up
// gives x3, x2 - x3^3, x1 - (x2 - x3^3 + x3)^3.
PolyMap tight_instance_map() {
    int n = 3;
    Polynomial x1 = Polynomial::variable(n, 1);
    Polynomial x2 = Polynomial::variable(n, 2);
    Polynomial x3 = Polynomial::variable(n, 3);
    return PolyMap(n, {x1 + (x2 + x3).pow(3), x2 + x3.pow(3), x3});
}

PolyMap tight_instance_oracle_inverse() {
    int n = 3;
    Polynomial x1 = Polynomial::variable(n, 1);
    Polynomial x2 = Polynomial::variable(n, 2);
    Polynomial x3 = Polynomial::variable(n, 3);
    Polynomial second = x2 - x3.pow(3);
    return PolyMap(n, {x1 - (second + x3).pow(3), second, x3});
}

std::string crit_tight_instance() {
    PolyMap f = tight_instance_map();
    auto [inv, report] = invert_theorem3(f);
    if (report.r != 2) throw std::runtime_error("expected r = 2, got " + std::to_string(report.r));
    if (report.actual_inverse_degree != 9)
        throw std::runtime_error("expected inverse degree 9, got " +
                                 std::to_string(report.actual_inverse_degree));
    if (!(inv.inverse_map == tight_instance_oracle_inverse()))
        throw std::runtime_error("inverse differs from the back-substitution oracle");
    if (!(compose(f, inv.inverse_map) == PolyMap::identity(3)) ||
        !(compose(inv.inverse_map, f) == PolyMap::identity(3)))
        throw std::runtime_error("composition with the inverse is not the identity");
    return "degree 9 = 3^2 inverse matches the back-substitution oracle";
}

struct CorpusResults {
    int checked = 0;
    CriterionOutcome theorem3, bcw, agreement;
};

CorpusResults run_bound_corpus(const SuiteConfig& cfg) {
    CorpusResults out;
    out.theorem3 = {"theorem3_bound_suite", true, false, ""};
    out.bcw = {"bcw_bound_suite", true, false, ""};
    out.agreement = {"algorithm_agreement", true, false, ""};
    std::vector<CorpusEntry> entries = build_keller_corpus(cfg.seed, cfg.keller_maps);
    for (int i = 0; i < cfg.druzkowski_specs; ++i) {
        auto [n, d] = kCombos[i % 6];
        entries.push_back(corpus_entry_triangular_druzkowski(n, d, cfg.seed + 1 + i));
    }
    try {
        for (const auto& entry : entries) {
            const PolyMap& f = entry.map;
            if (is_keller(f).keller != entry.expected_keller)
                throw TheoremContradiction("Keller verdict differs from provenance on " +
                                           entry.provenance);
            auto [inv, report] = invert_theorem3(f);
            // invert_theorem3 itself raises TheoremContradiction past d^r
            if (static_cast<long>(report.actual_inverse_degree) > report.bcw_bound) {
                out.bcw.passed = false;
                out.bcw.contradiction = true;
                out.bcw.detail = "inverse degree exceeds d^{n-1} on a corpus map";
            }
            unsigned bcw = static_cast<unsigned>(
                ipow(static_cast<long>(report.d), report.n - 1));
            InverseResult fp = invert_fixed_point(f, bcw);
            if (!(fp.inverse_map == inv.inverse_map)) {
                out.agreement.passed = false;
                out.agreement.detail = "invert_theorem3 and invert_fixed_point disagree";
            }
            if (!(compose(inv.inverse_map, f) == PolyMap::identity(f.nvars())))
                throw TheoremContradiction("left composition is not the identity");
            ++out.checked;
        }
    } catch (const TheoremContradiction& e) {
        out.theorem3.passed = false;
        out.theorem3.contradiction = true;
        out.theorem3.detail = e.what();
    } catch (const std::exception& e) {
        out.theorem3.passed = false;
        out.theorem3.detail = e.what();
    }
    std::string counts = std::to_string(out.checked) + " corpus maps checked";
    if (out.theorem3.passed) out.theorem3.detail = counts + ", all inverse degrees <= d^r";
    if (out.bcw.passed) out.bcw.detail = counts + ", all inverse degrees <= d^{n-1}";
    if (out.agreement.passed) out.agreement.detail = counts + ", both algorithms agree";
    return out;
}

std::string crit_corollary4(const SuiteConfig& cfg) {
    for (int i = 0; i < cfg.corollary4_specs; ++i) {
        auto [n, d] = kCombos[i % 6];
        DruzkowskiSpec spec = gen_random_druzkowski(n, d, cfg.seed + 1000 + i);
        PolyMatrix direct = jacobian(expand(spec)) -
                            PolyMatrix::identity(n, n);
        if (!(structural_jacobian(spec) == direct))
            throw TheoremContradiction("structural Jacobian differs from the direct one");
        kernel_equality_check(spec);
    }
    return std::to_string(cfg.corollary4_specs) + " specs: ker JH = ker A throughout";
}

std::string crit_theorem1(const SuiteConfig& cfg) {
    std::mt19937_64 eng(cfg.seed + 2000);
    int certificates = 0;
    for (int i = 0; i < cfg.theorem1_maps; ++i) {
        auto [n, d] = kCombos[i % 6];
        PolyMap f = expand(gen_triangular_druzkowski(n, d, cfg.seed + 2000 + i));
        for (int p = 0; p < cfg.points_per_map; ++p) {
            std::vector<Rational> a = random_nonzero_point(eng, n);
            auto cert = line_injectivity_certificate(f, a);
            if (!cert.valid)
                throw TheoremContradiction("invalid certificate, clause " +
                                           cert.failed_clause);
            // brute force: no collision F(lambda a) = F(a) for lambda != 1
            std::vector<Rational> fa = evaluate_map(f, a);
            for (int s = 0; s < 10; ++s) {
                Rational lambda = make_rational(rand_int(eng, -6, 6), rand_int(eng, 1, 3));
                if (lambda == 1) continue;
                std::vector<Rational> la;
                for (const auto& ai : a) la.push_back(lambda * ai);
                if (evaluate_map(f, la) == fa)
                    throw TheoremContradiction("collision on a line through the origin");
            }
            ++certificates;
        }
    }
    return std::to_string(certificates) + " certificates valid, no line collisions";
}

std::string crit_ideal_remark(const SuiteConfig& cfg) {
    for (int i = 0; i < cfg.theorem1_maps; ++i) {
        auto [n, d] = kCombos[i % 6];
        PolyMap f = expand(gen_triangular_druzkowski(n, d, cfg.seed + 2000 + i));
        if (!verify_ideal_remark(f))
            throw TheoremContradiction("unipotent_inverse(I + d^-1 JH) F != X");
    }
    return std::to_string(cfg.theorem1_maps) + " maps: X recovered exactly";
}

std::string crit_lemma2(const SuiteConfig& cfg) {
    int half = cfg.lemma2_maps / 2;
    for (int i = 0; i < cfg.lemma2_maps; ++i) {
        auto [n, d] = kCombos[i % 6];
        PolyMap f = i < half
                        ? gen_triangular_keller(n, d, cfg.seed + 3000 + i)
                        : expand(gen_triangular_druzkowski(n, d, cfg.seed + 3000 + i));
        RationalMatrix s = gen_invertible_matrix(n, cfg.seed + 4000 + i);
        PolyMap scrambled = linear_conjugate(f, s);
        // conjugate_normalize verifies the vanishing trailing columns itself
        ConjugationResult conj = conjugate_normalize(scrambled);
        auto [inv_f, rep_f] = invert_theorem3(scrambled);
        auto [inv_g, rep_g] = invert_theorem3(conj.G);
        if (inv_f.inverse_map.degree() != inv_g.inverse_map.degree())
            throw TheoremContradiction("conjugation changed the inverse degree");
    }
    return std::to_string(cfg.lemma2_maps) +
           " scrambled maps normalized, inverse degrees preserved";
}

std::string crit_negative_controls() {
    int n = 2;
    Polynomial x1 = Polynomial::variable(n, 1);
    Polynomial x2 = Polynomial::variable(n, 2);

    PolyMap square(n, {x1.pow(2), x2});
    if (is_keller(square).keller)
        throw std::runtime_error("(x1^2, x2) wrongly reported Keller");

    PolyMap quad(n, {x1 + x1.pow(2), x2});
    bool caught = false;
    try {
        invert_fixed_point(quad, 10);
    } catch (const NoPolynomialInverse&) {
        caught = true;
    }
    if (!caught)
        throw std::runtime_error("(x1 + x1^2, x2) did not fail inversion");

    PolyMap cubic(n, {x1 + x2.pow(3), x2});
    caught = false;
    try {
        line_injectivity_certificate(cubic, {Rational(0), Rational(0)});
    } catch (const std::invalid_argument&) {
        caught = true;
    }
    if (!caught)
        throw std::runtime_error("a = 0 was not rejected by the line certificate");
    return "all three negative controls behave as required";
}

}  // namespace

std::vector<CorpusEntry> build_keller_corpus(std::uint64_t seed, int count) {
    std::vector<CorpusEntry> entries;
    for (int i = 0; i < count; ++i) {
        auto [n, d] = kCombos[i % 6];
        entries.push_back(corpus_entry_triangular_keller(n, d, seed + i));
    }
    return entries;
}

std::vector<DruzkowskiSpec> build_druzkowski_corpus(std::uint64_t seed, int count) {
    std::vector<DruzkowskiSpec> specs;
    for (int i = 0; i < count; ++i) {
        auto [n, d] = kCombos[i % 6];
        specs.push_back(gen_triangular_druzkowski(n, d, seed + i));
    }
    return specs;
}

std::vector<CriterionOutcome> run_verification_suite(const SuiteConfig& cfg) {
    std::vector<CriterionOutcome> out;
    out.push_back(run_guarded("tight_theorem3_instance", crit_tight_instance));
    CorpusResults corpus = run_bound_corpus(cfg);
    out.push_back(corpus.theorem3);
    out.push_back(corpus.bcw);
    out.push_back(run_guarded("corollary4_suite", [&] { return crit_corollary4(cfg); }));
    out.push_back(run_guarded("theorem1_certificates", [&] { return crit_theorem1(cfg); }));
    out.push_back(run_guarded("ideal_remark", [&] { return crit_ideal_remark(cfg); }));
    out.push_back(run_guarded("lemma2_conjugation", [&] { return crit_lemma2(cfg); }));
    out.push_back(corpus.agreement);
    out.push_back(run_guarded("negative_controls", crit_negative_controls));
    return out;
}

}  // namespace keller
