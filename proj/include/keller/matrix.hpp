#ifndef KELLER_MATRIX_HPP
#define KELLER_MATRIX_HPP

#include <string>
#include <vector>

#include "keller/polynomial.hpp"

namespace keller {

// n x n (or m x n) matrix of exact rationals.
class RationalMatrix {
  public:
    RationalMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return entries_[i * cols_ + j]; }
    const Rational& at(int i, int j) const { return entries_[i * cols_ + j]; }
    bool operator==(const RationalMatrix& o) const = default;

    RationalMatrix operator*(const RationalMatrix& o) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    Rational det() const;
    RationalMatrix inverse() const;  // throws std::domain_error if singular

    std::string to_string() const;
    static RationalMatrix parse(const std::string& text);

  private:
    int rows_, cols_;
    std::vector<Rational> entries_;
};

// Result of exact Gauss-Jordan elimination, deterministic.
struct Elimination {
    RationalMatrix rref;
    std::vector<int> pivot_cols;  // ascending
    std::vector<int> free_cols;   // ascending
};

Elimination eliminate(const RationalMatrix& m);

// Right-kernel basis; vector for free column f has a 1 in position f,
// free columns taken in ascending order.
std::vector<std::vector<Rational>> rational_kernel(const RationalMatrix& m);
int rational_rank(const RationalMatrix& m);

// True when v lies in the span of the given vectors.
bool in_span(const std::vector<std::vector<Rational>>& basis,
             const std::vector<Rational>& v);

// Matrix of polynomials sharing one nvars.
class PolyMatrix {
  public:
    PolyMatrix(int rows, int cols, int nvars)
        : rows_(rows), cols_(cols), nvars_(nvars),
          entries_(rows * cols, Polynomial::zero(nvars)) {}

    static PolyMatrix identity(int n, int nvars);
    static PolyMatrix from_rational(const RationalMatrix& m, int nvars);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }
    Polynomial& at(int i, int j) { return entries_[i * cols_ + j]; }
    const Polynomial& at(int i, int j) const { return entries_[i * cols_ + j]; }
    bool operator==(const PolyMatrix& o) const = default;
    bool is_zero() const;

    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;

    // Matrix * column vector of polynomials.
    std::vector<Polynomial> apply(const std::vector<Polynomial>& v) const;

    RationalMatrix evaluate(const std::vector<Rational>& point) const;

  private:
    int rows_, cols_, nvars_;
    std::vector<Polynomial> entries_;
};

// Cofactor expansion with memoization on column subsets; fine for n <= 6,
// which covers every target workload. Documented scaling limit.
Polynomial poly_det(const PolyMatrix& m);

struct NilpotencyResult {
    bool nilpotent;
    int witness;  // least k with M^k = 0; 0 when not nilpotent
};

// Decides nilpotency by the single test M^n = 0 (valid over any commutative
// ring); reports the least vanishing power.
NilpotencyResult is_nilpotent(const PolyMatrix& m);
NilpotencyResult is_nilpotent(const RationalMatrix& m);

// Inverse of M = I + N with N nilpotent: sum of (-N)^k. Throws
// std::domain_error when M - I is not nilpotent.
PolyMatrix unipotent_inverse(const PolyMatrix& m);

}  // namespace keller

#endif
