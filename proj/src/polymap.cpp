#include "keller/polymap.hpp"

#include <map>
#include <sstream>

namespace keller {

namespace {

std::vector<Polynomial> variable_column(int n) {
    std::vector<Polynomial> x;
    x.reserve(n);
    for (int j = 1; j <= n; ++j) x.push_back(Polynomial::variable(n, j));
    return x;
}

// Checks F = x + H with ord(H) >= 2; returns the decomposition.
MapDecomposition require_normalized(const PolyMap& f, const char* who) {
    MapDecomposition dec = decompose(f);
    if (dec.linear_part != RationalMatrix::identity(f.nvars()))
        throw std::invalid_argument(std::string(who) + ": map is not of the form x + H");
    for (const auto& t : dec.translation)
        if (t != 0)
            throw std::invalid_argument(std::string(who) + ": map has a translation part");
    return dec;
}

// Requires every nonzero H_i homogeneous of one common degree d >= 2.
// Returns that degree, or 0 when H = 0.
unsigned require_homogeneous(const PolyMap& h, const char* who) {
    unsigned d = 0;
    for (const auto& hi : h.components()) {
        if (hi.is_zero()) continue;
        unsigned di = 0;
        if (!hi.is_homogeneous(&di))
            throw std::invalid_argument(std::string(who) + ": H is not homogeneous");
        if (d != 0 && di != d)
            throw std::invalid_argument(std::string(who) +
                                        ": H components have different degrees");
        d = di;
    }
    if (d == 1)
        throw std::invalid_argument(std::string(who) + ": deg H must be >= 2");
    return d;
}

}  // namespace

PolyMap::PolyMap(int nvars, std::vector<Polynomial> components)
    : nvars_(nvars), components_(std::move(components)) {
    for (const auto& c : components_)
        if (c.nvars() != nvars_)
            throw std::invalid_argument("map components disagree on nvars");
}

PolyMap PolyMap::identity(int nvars) { return PolyMap(nvars, variable_column(nvars)); }

unsigned PolyMap::degree() const {
    unsigned d = 0;
    for (const auto& c : components_) d = std::max(d, c.degree());
    return d;
}

bool PolyMap::is_zero() const {
    for (const auto& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

std::string PolyMap::to_text() const {
    std::ostringstream out;
    out << "nvars: " << nvars_ << "\n";
    for (int i = 0; i < size(); ++i)
        out << "F" << (i + 1) << ": " << components_[i].to_string() << "\n";
    return out.str();
}

PolyMap PolyMap::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos || line.substr(0, colon) != "nvars")
            throw std::invalid_argument("map file must start with 'nvars: <n>'");
        n = std::stoi(line.substr(colon + 1));
        break;
    }
    if (n < 1) throw std::invalid_argument("bad or missing nvars in map file");
    std::vector<Polynomial> comps;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string expected = "F" + std::to_string(comps.size() + 1);
        auto colon = line.find(':');
        if (colon == std::string::npos || line.substr(0, colon) != expected)
            throw std::invalid_argument("expected line '" + expected + ": <polynomial>'");
        comps.push_back(Polynomial::parse(line.substr(colon + 1), n));
    }
    if (static_cast<int>(comps.size()) != n)
        throw std::invalid_argument("map file component count does not match nvars");
    return PolyMap(n, std::move(comps));
}

std::string BoundReport::to_text() const {
    std::ostringstream out;
    out << "n: " << n << "\n"
        << "d: " << d << "\n"
        << "r: " << r << "\n"
        << "kernel_dim: " << kernel_dim << "\n"
        << "bound: " << bound << "\n"
        << "bcw_bound: " << bcw_bound << "\n"
        << "actual_inverse_degree: " << actual_inverse_degree << "\n";
    return out.str();
}

PolyMatrix jacobian(const PolyMap& f) {
    int n = f.nvars();
    PolyMatrix j(f.size(), n, n);
    for (int i = 0; i < f.size(); ++i)
        for (int v = 1; v <= n; ++v) j.at(i, v - 1) = f[i].partial_derivative(v);
    return j;
}

MapDecomposition decompose(const PolyMap& f) {
    int n = f.nvars();
    RationalMatrix lin(f.size(), n);
    std::vector<Rational> trans;
    std::vector<Polynomial> higher;
    for (int i = 0; i < f.size(); ++i) {
        trans.push_back(f[i].constant_term());
        Polynomial h(n);
        for (const auto& [m, c] : f[i].terms()) {
            unsigned deg = m.degree();
            if (deg == 0) continue;
            if (deg == 1) {
                for (int j = 0; j < n; ++j)
                    if (m.exps[j] == 1) lin.at(i, j) = c;
            } else {
                h.add_term(m, c);
            }
        }
        higher.push_back(std::move(h));
    }
    PolyMap h(n, std::move(higher));
    unsigned d = h.degree();
    return MapDecomposition{std::move(lin), std::move(trans), std::move(h), d};
}

PolyMap normalize(const PolyMap& f) {
    MapDecomposition dec = decompose(f);
    RationalMatrix linv = dec.linear_part.inverse();  // throws when singular
    int n = f.nvars();
    std::vector<Polynomial> shifted;
    for (int i = 0; i < f.size(); ++i)
        shifted.push_back(f[i] - Polynomial::constant(n, dec.translation[i]));
    std::vector<Polynomial> out(n, Polynomial::zero(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (linv.at(i, j) != 0) out[i] = out[i] + linv.at(i, j) * shifted[j];
    return PolyMap(n, std::move(out));
}

KellerResult is_keller(const PolyMap& f) {
    Polynomial det = poly_det(jacobian(f));
    return {!det.is_zero() && det.is_constant(), det};
}

PolyMatrix euler_decompose(const PolyMap& f) {
    MapDecomposition dec = require_normalized(f, "euler_decompose");
    int n = f.nvars();
    if (dec.higher_part.is_zero()) return PolyMatrix::identity(n, n);
    unsigned d = require_homogeneous(dec.higher_part, "euler_decompose");
    PolyMatrix jh = jacobian(dec.higher_part);
    PolyMatrix m = PolyMatrix::identity(n, n);
    Rational inv_d = make_rational(1, static_cast<long>(d));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = m.at(i, j) + inv_d * jh.at(i, j);
    // Euler's identity guarantees M*X = F; failure would contradict it.
    std::vector<Polynomial> mx = m.apply(variable_column(n));
    for (int i = 0; i < n; ++i)
        if (!(mx[i] == f[i]))
            throw TheoremContradiction("euler_decompose: (I + d^-1 JH) X != F");
    return m;
}

bool verify_ideal_remark(const PolyMap& f) {
    MapDecomposition dec = require_normalized(f, "verify_ideal_remark");
    int n = f.nvars();
    if (!dec.higher_part.is_zero()) require_homogeneous(dec.higher_part, "verify_ideal_remark");
    PolyMatrix jh = jacobian(dec.higher_part);
    if (!is_nilpotent(jh).nilpotent)
        throw std::domain_error("verify_ideal_remark: JH is not nilpotent");
    PolyMatrix m = euler_decompose(f);
    PolyMatrix minv = unipotent_inverse(m);
    std::vector<Polynomial> result = minv.apply(f.components());
    std::vector<Polynomial> x = variable_column(n);
    for (int i = 0; i < n; ++i)
        if (!(result[i] == x[i])) return false;
    return true;
}

LineInjectivityCertificate line_injectivity_certificate(
    const PolyMap& f, const std::vector<Rational>& a) {
    int n = f.nvars();
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("line certificate: point arity mismatch");
    bool all_zero = true;
    for (const auto& ai : a)
        if (ai != 0) all_zero = false;
    if (all_zero)
        throw std::invalid_argument("line certificate: the point a = 0 is rejected");
    MapDecomposition dec = require_normalized(f, "line_injectivity_certificate");
    unsigned d = 1;
    if (!dec.higher_part.is_zero())
        d = require_homogeneous(dec.higher_part, "line_injectivity_certificate");
    KellerResult kc = is_keller(f);
    if (!(kc.det == Polynomial::constant(n, Rational(1))))
        throw std::invalid_argument("line certificate requires det JF = 1");

    LineInjectivityCertificate cert;
    cert.point = a;

    // (i) JH(a) nilpotent
    RationalMatrix na = jacobian(dec.higher_part).evaluate(a);
    auto np = is_nilpotent(na);
    cert.nilpotent = np.nilpotent;
    cert.nilpotency_witness = np.witness;

    // (ii) det(I + d^-1 (lambda^{d-1} + ... + 1) JH(a)) = 1 in Q[lambda]
    Polynomial s(1);
    for (unsigned k = 0; k < d; ++k) {
        Monomial m(1);
        m.exps[0] = k;
        s.add_term(m, Rational(1));
    }
    Rational inv_d = make_rational(1, static_cast<long>(d));
    PolyMatrix lm = PolyMatrix::identity(n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (na.at(i, j) != 0)
                lm.at(i, j) = lm.at(i, j) + (inv_d * na.at(i, j)) * s;
    cert.det_identity_holds = poly_det(lm) == Polynomial::constant(1, Rational(1));

    // (iii) gcd of p_i(lambda) = F_i(lambda a) - F_i(a) is a power of (lambda-1)
    std::vector<Polynomial> ps;
    for (int i = 0; i < n; ++i) {
        Polynomial p(1);
        for (const auto& [m, c] : f[i].terms()) {
            Rational coef = c;
            for (int j = 0; j < n; ++j)
                if (m.exps[j] > 0) coef *= rational_pow(a[j], m.exps[j]);
            Monomial lam(1);
            lam.exps[0] = m.degree();
            p.add_term(lam, coef);
        }
        p.add_term(Monomial(1), Rational(-f[i].evaluate(a)));
        if (!p.is_zero()) ps.push_back(std::move(p));
    }
    if (ps.empty()) {
        cert.gcd_root_check = false;
    } else {
        Polynomial g = Polynomial::zero(1);
        for (const auto& p : ps) g = univariate_gcd(g, p);
        unsigned k = g.degree();
        Polynomial lam_minus_1 = Polynomial::variable(1, 1) - Polynomial::constant(1, Rational(1));
        cert.gcd_root_check = k >= 1 && g == lam_minus_1.pow(k);
    }

    cert.valid = cert.nilpotent && cert.det_identity_holds && cert.gcd_root_check;
    if (!cert.valid) {
        if (!cert.nilpotent)
            cert.failed_clause = "nilpotency";
        else if (!cert.det_identity_holds)
            cert.failed_clause = "det_identity";
        else
            cert.failed_clause = "gcd_root_check";
    }
    return cert;
}

std::vector<std::vector<Rational>> constant_kernel(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("constant_kernel expects a square matrix");
    int n = m.cols();
    // coefficient matrix per monomial, monomials in canonical order
    std::map<Monomial, RationalMatrix, GrlexLess> slices;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [mon, c] : m.at(i, j).terms()) {
                auto [it, inserted] = slices.try_emplace(mon, RationalMatrix(m.rows(), n));
                it->second.at(i, j) = c;
            }
    RationalMatrix stacked(static_cast<int>(slices.size()) * m.rows(), n);
    int row = 0;
    for (const auto& [mon, slice] : slices) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < n; ++j) stacked.at(row + i, j) = slice.at(i, j);
        row += m.rows();
    }
    return rational_kernel(stacked);
}

PolyMap linear_conjugate(const PolyMap& f, const RationalMatrix& s) {
    int n = f.nvars();
    RationalMatrix sinv = s.inverse();
    std::vector<Polynomial> sx(n, Polynomial::zero(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (s.at(i, j) != 0)
                sx[i] = sx[i] + s.at(i, j) * Polynomial::variable(n, j + 1);
    std::vector<Polynomial> fsx;
    for (int i = 0; i < n; ++i) fsx.push_back(f[i].substitute(sx));
    std::vector<Polynomial> out(n, Polynomial::zero(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sinv.at(i, j) != 0) out[i] = out[i] + sinv.at(i, j) * fsx[j];
    return PolyMap(n, std::move(out));
}

ConjugationResult conjugate_normalize(const PolyMap& f) {
    MapDecomposition dec = require_normalized(f, "conjugate_normalize");
    int n = f.nvars();
    PolyMatrix jh = jacobian(dec.higher_part);

    // Stack the per-monomial coefficient matrices and eliminate once; the
    // pivot columns give the first r columns of T, the kernel basis the rest.
    std::map<Monomial, RationalMatrix, GrlexLess> slices;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [mon, c] : jh.at(i, j).terms()) {
                auto [it, inserted] = slices.try_emplace(mon, RationalMatrix(n, n));
                it->second.at(i, j) = c;
            }
    RationalMatrix stacked(std::max(1, static_cast<int>(slices.size())) * n, n);
    int row = 0;
    for (const auto& [mon, slice] : slices) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) stacked.at(row + i, j) = slice.at(i, j);
        row += n;
    }
    Elimination e = eliminate(stacked);
    int r = static_cast<int>(e.pivot_cols.size());

    RationalMatrix t(n, n);
    for (int c = 0; c < r; ++c) t.at(e.pivot_cols[c], c) = 1;
    for (std::size_t c = 0; c < e.free_cols.size(); ++c) {
        int fcol = e.free_cols[c];
        t.at(fcol, r + static_cast<int>(c)) = 1;
        for (int p = 0; p < r; ++p)
            t.at(e.pivot_cols[p], r + static_cast<int>(c)) = -e.rref.at(p, fcol);
    }

    PolyMap g = linear_conjugate(f, t);

    // Postcondition: the last n-r columns of J(G-x) vanish identically and
    // the constant kernel is exactly span{e_{r+1},...,e_n}.
    MapDecomposition gdec = decompose(g);
    PolyMatrix jg = jacobian(gdec.higher_part);
    for (int i = 0; i < n; ++i)
        for (int j = r; j < n; ++j)
            if (!jg.at(i, j).is_zero())
                throw TheoremContradiction(
                    "conjugate_normalize: J(G-x) has a nonzero trailing column");
    auto kb = constant_kernel(jg);
    if (static_cast<int>(kb.size()) != n - r)
        throw TheoremContradiction("conjugate_normalize: kernel dimension changed");
    for (std::size_t c = 0; c < kb.size(); ++c)
        for (int i = 0; i < n; ++i)
            if (kb[c][i] != (i == r + static_cast<int>(c) ? 1 : 0))
                throw TheoremContradiction(
                    "conjugate_normalize: kernel basis is not {e_{r+1},...,e_n}");

    return ConjugationResult{std::move(t), std::move(g), r};
}

InverseResult invert_fixed_point(const PolyMap& f, unsigned max_degree) {
    MapDecomposition dec = require_normalized(f, "invert_fixed_point");
    int n = f.nvars();
    const PolyMap& h = dec.higher_part;
    std::vector<Polynomial> x = variable_column(n);

    std::vector<Polynomial> g(n, Polynomial::zero(n));
    int iterations = 0;
    bool converged = false;
    for (unsigned iter = 1; iter <= max_degree + 1; ++iter) {
        std::vector<Polynomial> args;
        args.reserve(n);
        for (int i = 0; i < n; ++i) args.push_back(x[i] - g[i]);
        std::vector<Polynomial> next;
        next.reserve(n);
        for (int i = 0; i < n; ++i) next.push_back(h[i].substitute(args, max_degree));
        bool same = next == g;
        g = std::move(next);
        if (same) {
            iterations = static_cast<int>(iter);
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NoPolynomialInverse("no polynomial inverse of degree <= " +
                                  std::to_string(max_degree));

    std::vector<Polynomial> inv_comps;
    for (int i = 0; i < n; ++i) inv_comps.push_back(x[i] - g[i]);
    PolyMap inverse(n, inv_comps);

    // Truncation can mask non-invertibility; verify exactly, untruncated.
    if (!(compose(f, inverse) == PolyMap::identity(n)))
        throw NoPolynomialInverse("no polynomial inverse of degree <= " +
                                  std::to_string(max_degree));
    return InverseResult{std::move(inverse), PolyMap(n, std::move(g)), iterations,
                         max_degree};
}

std::pair<InverseResult, BoundReport> invert_theorem3(const PolyMap& f) {
    MapDecomposition dec = require_normalized(f, "invert_theorem3");
    int n = f.nvars();
    unsigned d = std::max(dec.degree, 1u);

    ConjugationResult conj = conjugate_normalize(f);
    int r = conj.r;
    MapDecomposition gdec = decompose(conj.G);
    const PolyMap& hp = gdec.higher_part;  // every component lies in Q[x1..xr]

    // Invert the r-variable sub-map (G_1,...,G_r) at the sub-bound d^{r-1}.
    std::vector<Polynomial> sub_g;
    int iterations = 1;
    if (r > 0) {
        std::vector<Polynomial> sub_h;
        for (int i = 0; i < r; ++i) {
            Polynomial p(r);
            for (const auto& [m, c] : hp[i].terms()) {
                Monomial mm(std::vector<unsigned>(m.exps.begin(), m.exps.begin() + r));
                p.add_term(mm, c);
            }
            sub_h.push_back(Polynomial::variable(r, i + 1) + p);
        }
        InverseResult sub = invert_fixed_point(
            PolyMap(r, std::move(sub_h)),
            static_cast<unsigned>(ipow(static_cast<long>(d), r - 1)));
        iterations = sub.iterations;
        sub_g = sub.correction.components();
    }

    // G_i = H_i(x_1 - G_1, ..., x_r - G_r, x_{r+1}, ...) for all i.
    unsigned full_bound = static_cast<unsigned>(ipow(static_cast<long>(d), r));
    std::vector<Polynomial> x = variable_column(n);
    std::vector<Polynomial> args = x;
    for (int i = 0; i < r; ++i) {
        Polynomial lifted(n);
        for (const auto& [m, c] : sub_g[i].terms()) {
            Monomial mm(n);
            for (int j = 0; j < r; ++j) mm.exps[j] = m.exps[j];
            lifted.add_term(mm, c);
        }
        args[i] = x[i] - lifted;
    }
    std::vector<Polynomial> g_inv_comps;
    for (int i = 0; i < n; ++i)
        g_inv_comps.push_back(x[i] - hp[i].substitute(args, full_bound));
    PolyMap g_inverse(n, std::move(g_inv_comps));

    // Exact verification, done in the normalized coordinates: since
    // F = T G(T^{-1} x) with T invertible, G o G^{-1} = x is equivalent to
    // F o F^{-1} = x but composes far sparser polynomials.
    if (!(compose(conj.G, g_inverse) == PolyMap::identity(n)))
        throw NoPolynomialInverse("invert_theorem3: exact verification failed");

    // Conjugate back: F^{-1} = T (G^{-1}(T^{-1} x)).
    PolyMap f_inverse = linear_conjugate(g_inverse, conj.T.inverse());

    BoundReport report;
    report.n = n;
    report.d = d;
    report.r = r;
    report.kernel_dim = n - r;
    report.bound = ipow(static_cast<long>(d), r);
    report.bcw_bound = ipow(static_cast<long>(d), n - 1);
    report.actual_inverse_degree = f_inverse.degree();
    if (static_cast<long>(report.actual_inverse_degree) > report.bound)
        throw TheoremContradiction("inverse degree " +
                                   std::to_string(report.actual_inverse_degree) +
                                   " exceeds d^r = " + std::to_string(report.bound));

    std::vector<Polynomial> corr;
    for (int i = 0; i < n; ++i) corr.push_back(x[i] - f_inverse[i]);
    InverseResult res{std::move(f_inverse), PolyMap(n, std::move(corr)), iterations,
                      full_bound};
    return {std::move(res), report};
}

BoundReport degree_bound_report(const PolyMap& f) {
    auto [inv, report] = invert_theorem3(f);
    if (report.r <= report.n - 1 && report.bound > report.bcw_bound)
        throw TheoremContradiction("d^r exceeds the BCW bound d^{n-1}");
    return report;
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
    if (f.nvars() != g.size())
        throw std::invalid_argument("compose arity mismatch");
    std::vector<Polynomial> out;
    for (int i = 0; i < f.size(); ++i) out.push_back(f[i].substitute(g.components()));
    return PolyMap(g.nvars(), std::move(out));
}

}  // namespace keller
