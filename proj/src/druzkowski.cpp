#include "keller/druzkowski.hpp"

#include <random>
#include <sstream>

namespace keller {

namespace {

// uniform integer in [lo, hi] from the raw engine stream; avoids the
// implementation-defined std::uniform_int_distribution for reproducibility
long rand_int(std::mt19937_64& eng, long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Polynomial row_linear_form(const RationalMatrix& a, int i, int n) {
    Polynomial l(n);
    for (int j = 0; j < n; ++j)
        if (a.at(i, j) != 0) l = l + a.at(i, j) * Polynomial::variable(n, j + 1);
    return l;
}

}  // namespace

std::string DruzkowskiSpec::to_text() const {
    std::ostringstream out;
    out << "d: " << d << "\n" << A.to_string();
    return out.str();
}

DruzkowskiSpec DruzkowskiSpec::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty druzkowski spec");
    auto colon = line.find(':');
    if (colon == std::string::npos || line.substr(0, colon) != "d")
        throw std::invalid_argument("druzkowski spec must start with 'd: <d>'");
    int d = std::stoi(line.substr(colon + 1));
    if (d < 2) throw std::invalid_argument("druzkowski degree must be >= 2");
    std::string rest((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    RationalMatrix a = RationalMatrix::parse(rest);
    if (a.rows() != a.cols())
        throw std::invalid_argument("druzkowski matrix must be square");
    return DruzkowskiSpec{std::move(a), d};
}

PolyMap expand(const DruzkowskiSpec& spec) {
    if (spec.d < 2) throw std::invalid_argument("druzkowski degree must be >= 2");
    int n = spec.A.rows();
    std::vector<Polynomial> comps;
    for (int i = 0; i < n; ++i)
        comps.push_back(Polynomial::variable(n, i + 1) +
                        row_linear_form(spec.A, i, n).pow(spec.d));
    return PolyMap(n, std::move(comps));
}

PolyMatrix structural_jacobian(const DruzkowskiSpec& spec) {
    int n = spec.A.rows();
    PolyMatrix jh(n, n, n);
    Rational dscale(spec.d);
    for (int i = 0; i < n; ++i) {
        Polynomial diag = row_linear_form(spec.A, i, n).pow(spec.d - 1);
        for (int j = 0; j < n; ++j)
            if (spec.A.at(i, j) != 0) jh.at(i, j) = (dscale * spec.A.at(i, j)) * diag;
    }
    return jh;
}

bool kernel_equality_check(const DruzkowskiSpec& spec) {
    auto kjh = constant_kernel(structural_jacobian(spec));
    auto ka = rational_kernel(spec.A);
    for (const auto& v : kjh)
        if (!in_span(ka, v))
            throw TheoremContradiction("kernel_equality_check: ker JH is not in ker A");
    for (const auto& v : ka)
        if (!in_span(kjh, v))
            throw TheoremContradiction("kernel_equality_check: ker A is not in ker JH");
    return true;
}

std::string KellerFactsReport::to_text() const {
    std::ostringstream out;
    out << "keller: " << (keller ? "true" : "false") << "\n"
        << "jh_nilpotent: " << (jh_nilpotent ? "true" : "false") << "\n"
        << "det_a: " << det_a.get_str() << "\n"
        << "rank_a: " << rank_a << "\n"
        << "passed: " << (passed ? "true" : "false") << "\n";
    return out.str();
}

KellerFactsReport keller_facts_check(const DruzkowskiSpec& spec) {
    int n = spec.A.rows();
    KellerFactsReport rep;
    PolyMap f = expand(spec);
    rep.keller = is_keller(f).keller;
    rep.jh_nilpotent = is_nilpotent(structural_jacobian(spec)).nilpotent;
    rep.det_a = spec.A.det();
    rep.rank_a = rational_rank(spec.A);
    if (rep.keller) {
        if (!rep.jh_nilpotent)
            throw TheoremContradiction("keller_facts: Keller map with non-nilpotent JH");
        if (rep.det_a != 0)
            throw TheoremContradiction("keller_facts: Keller map with |A| != 0");
        if (rep.rank_a > n - 1)
            throw TheoremContradiction("keller_facts: Keller map with rank A = n");
    }
    if (rep.jh_nilpotent && !rep.keller)
        throw TheoremContradiction("keller_facts: nilpotent JH but not Keller");
    rep.passed = true;
    return rep;
}

CorpusEntry corpus_entry_triangular_keller(int n, int d, std::uint64_t seed) {
    std::ostringstream tag;
    tag << "triangular-keller-n" << n << "-d" << d << "-s" << seed;
    return CorpusEntry{gen_triangular_keller(n, d, seed), tag.str(), true};
}

CorpusEntry corpus_entry_triangular_druzkowski(int n, int d, std::uint64_t seed) {
    std::ostringstream tag;
    tag << "triangular-druzkowski-n" << n << "-d" << d << "-s" << seed;
    return CorpusEntry{expand(gen_triangular_druzkowski(n, d, seed)), tag.str(), true};
}

DruzkowskiSpec gen_triangular_druzkowski(int n, int d, std::uint64_t seed,
                                         int coeff_range) {
    if (n < 1 || d < 2) throw std::invalid_argument("bad generator parameters");
    std::mt19937_64 eng(seed);
    RationalMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            a.at(i, j) = rand_int(eng, -coeff_range, coeff_range);
    return DruzkowskiSpec{std::move(a), d};
}

PolyMap gen_triangular_keller(int n, int d, std::uint64_t seed,
                              int terms_per_component) {
    if (n < 1 || d < 2) throw std::invalid_argument("bad generator parameters");
    std::mt19937_64 eng(seed);
    std::vector<Polynomial> comps;
    for (int i = 0; i < n; ++i) {
        Polynomial h(n);
        // H_i uses variables x_{i+2},...,x_n only (strictly later), so JH is
        // strictly upper triangular.
        if (i + 1 < n) {
            for (int t = 0; t < terms_per_component; ++t) {
                long deg = rand_int(eng, 2, d);
                Monomial m(n);
                for (long k = 0; k < deg; ++k)
                    m.exps[rand_int(eng, i + 1, n - 1)] += 1;
                long c = rand_int(eng, 1, 6);
                if (c > 3) c = 3 - c;  // nonzero in [-3, 3]
                h.add_term(m, Rational(c));
            }
        }
        comps.push_back(Polynomial::variable(n, i + 1) + h);
    }
    return PolyMap(n, std::move(comps));
}

DruzkowskiSpec gen_random_druzkowski(int n, int d, std::uint64_t seed,
                                     int coeff_range) {
    if (n < 1 || d < 2) throw std::invalid_argument("bad generator parameters");
    std::mt19937_64 eng(seed);
    RationalMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.at(i, j) = rand_int(eng, -coeff_range, coeff_range);
    return DruzkowskiSpec{std::move(a), d};
}

RationalMatrix gen_invertible_matrix(int n, std::uint64_t seed, int range) {
    std::mt19937_64 eng(seed);
    while (true) {
        RationalMatrix s(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s.at(i, j) = rand_int(eng, -range, range);
        if (s.det() != 0) return s;
    }
}

}  // namespace keller
