#ifndef KELLER_POLYNOMIAL_HPP
#define KELLER_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "keller/rational.hpp"

namespace keller {

// Exponent vector of fixed length nvars.
struct Monomial {
    std::vector<unsigned> exps;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}

    unsigned degree() const {
        unsigned d = 0;
        for (unsigned e : exps) d += e;
        return d;
    }
    bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// Graded lexicographic order (x1 > x2 > ...), ascending form for std::map.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.exps.size(); ++i)
            if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
        return false;
    }
};

// Sparse multivariate polynomial over the rationals. Immutable in spirit:
// all operations return new values. Invariant: no zero coefficients stored.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    explicit Polynomial(int nvars = 1) : nvars_(nvars) {}

    static Polynomial zero(int nvars) { return Polynomial(nvars); }
    static Polynomial constant(int nvars, const Rational& c);
    // 1-based variable index, matching the x1, x2, ... text form.
    static Polynomial variable(int nvars, int j);
    static Polynomial term(int nvars, const Monomial& m, const Rational& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Total degree; 0 for the zero polynomial.
    unsigned degree() const;
    // Least total degree among terms (order); 0 for the zero polynomial.
    unsigned order() const;
    const TermMap& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const;

    Polynomial operator-() const;
    Polynomial& add_term(const Monomial& m, const Rational& c);

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    bool operator==(const Polynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    Polynomial mul_truncated(const Polynomial& q, unsigned max_degree) const;
    Polynomial truncate(unsigned max_degree) const;
    Polynomial pow(unsigned e, std::optional<unsigned> max_degree = {}) const;
    Polynomial partial_derivative(int j) const;  // 1-based index
    Polynomial substitute(const std::vector<Polynomial>& args,
                          std::optional<unsigned> max_degree = {}) const;
    Polynomial homogeneous_component(unsigned k) const;
    Rational evaluate(const std::vector<Rational>& point) const;

    // True when every term has total degree exactly *d (nonzero p only).
    bool is_homogeneous(unsigned* d = nullptr) const;

    std::string to_string() const;
    static Polynomial parse(const std::string& text, int nvars);

  private:
    int nvars_;
    TermMap terms_;
};

// Monic gcd over Q[lambda] by Euclid's algorithm; both inputs univariate.
Polynomial univariate_gcd(const Polynomial& p, const Polynomial& q);

}  // namespace keller

#endif
