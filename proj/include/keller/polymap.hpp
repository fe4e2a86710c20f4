#ifndef KELLER_POLYMAP_HPP
#define KELLER_POLYMAP_HPP

#include <string>
#include <utility>
#include <vector>

#include "keller/errors.hpp"
#include "keller/matrix.hpp"
#include "keller/polynomial.hpp"

namespace keller {

// An n-tuple of polynomials representing a map K^n -> K^n (or K^n -> K^m
// while intermediate).
class PolyMap {
  public:
    explicit PolyMap(int nvars) : nvars_(nvars) {}
    PolyMap(int nvars, std::vector<Polynomial> components);

    static PolyMap identity(int nvars);

    int nvars() const { return nvars_; }
    int size() const { return static_cast<int>(components_.size()); }
    const Polynomial& operator[](int i) const { return components_[i]; }
    const std::vector<Polynomial>& components() const { return components_; }
    bool operator==(const PolyMap& o) const = default;

    unsigned degree() const;  // max component degree; 0 for the zero map
    bool is_zero() const;

    std::string to_text() const;           // map file format
    static PolyMap parse(const std::string& text);

  private:
    int nvars_;
    std::vector<Polynomial> components_;
};

struct MapDecomposition {
    RationalMatrix linear_part;
    std::vector<Rational> translation;
    PolyMap higher_part;  // order >= 2
    unsigned degree;      // deg of higher_part (0 when it vanishes)
};

struct InverseResult {
    PolyMap inverse_map;      // x - G
    PolyMap correction;       // G
    int iterations;
    unsigned truncation_bound;
};

struct LineInjectivityCertificate {
    std::vector<Rational> point;
    int nilpotency_witness = 0;
    bool nilpotent = false;
    bool det_identity_holds = false;
    bool gcd_root_check = false;
    bool valid = false;
    std::string failed_clause;  // empty when valid
};

struct BoundReport {
    int n = 0;
    unsigned d = 0;
    int r = 0;
    int kernel_dim = 0;
    long bound = 0;       // d^r
    long bcw_bound = 0;   // d^(n-1)
    unsigned actual_inverse_degree = 0;

    std::string to_text() const;
};

struct KellerResult {
    bool keller;
    Polynomial det;
};

struct ConjugationResult {
    RationalMatrix T;
    PolyMap G;  // T^{-1} F(Tx)
    int r;
};

PolyMatrix jacobian(const PolyMap& f);
MapDecomposition decompose(const PolyMap& f);

// L^{-1}(F(x) - F(0)) for invertible linear part L; result has the form x + H
// with ord(H) >= 2. Throws std::domain_error when L is singular.
PolyMap normalize(const PolyMap& f);

KellerResult is_keller(const PolyMap& f);

// Requires F = x + H with H homogeneous of degree d >= 2 (H = 0 is allowed
// and treated as F = I*X). Returns M = I + d^{-1} JH and checks M*X = F.
PolyMatrix euler_decompose(const PolyMap& f);

// unipotent_inverse(I + d^{-1} JH) * F must be exactly the variable column.
bool verify_ideal_remark(const PolyMap& f);

LineInjectivityCertificate line_injectivity_certificate(
    const PolyMap& f, const std::vector<Rational>& a);

// Basis of {v : M v = 0 as a polynomial identity}, via the stacked
// per-monomial coefficient matrices.
std::vector<std::vector<Rational>> constant_kernel(const PolyMatrix& m);

ConjugationResult conjugate_normalize(const PolyMap& f);

InverseResult invert_fixed_point(const PolyMap& f, unsigned max_degree);
std::pair<InverseResult, BoundReport> invert_theorem3(const PolyMap& f);
BoundReport degree_bound_report(const PolyMap& f);

PolyMap compose(const PolyMap& f, const PolyMap& g);

// F conjugated by a rational linear change of coordinates: S^{-1} F(Sx).
PolyMap linear_conjugate(const PolyMap& f, const RationalMatrix& s);

}  // namespace keller

#endif
