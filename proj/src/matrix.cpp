#include "keller/matrix.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace keller {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<Rational> r(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

Elimination eliminate(const RationalMatrix& m) {
    Elimination e{m, {}, {}};
    RationalMatrix& a = e.rref;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < a.rows(); ++i)
            if (a.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(row, j));
        Rational inv = 1 / a.at(row, col);
        for (int j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col) == 0) continue;
            Rational f = a.at(i, col);
            for (int j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    for (int col = 0, p = 0; col < a.cols(); ++col) {
        if (p < static_cast<int>(e.pivot_cols.size()) && e.pivot_cols[p] == col)
            ++p;
        else
            e.free_cols.push_back(col);
    }
    return e;
}

std::vector<std::vector<Rational>> rational_kernel(const RationalMatrix& m) {
    Elimination e = eliminate(m);
    std::vector<std::vector<Rational>> basis;
    for (int f : e.free_cols) {
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = -e.rref.at(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

int rational_rank(const RationalMatrix& m) {
    return static_cast<int>(eliminate(m).pivot_cols.size());
}

bool in_span(const std::vector<std::vector<Rational>>& basis,
             const std::vector<Rational>& v) {
    if (basis.empty()) {
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }
    int n = static_cast<int>(v.size());
    RationalMatrix cols(n, static_cast<int>(basis.size()));
    RationalMatrix aug(n, static_cast<int>(basis.size()) + 1);
    for (int i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            cols.at(i, static_cast<int>(j)) = basis[j][i];
            aug.at(i, static_cast<int>(j)) = basis[j][i];
        }
        aug.at(i, static_cast<int>(basis.size())) = v[i];
    }
    return rational_rank(cols) == rational_rank(aug);
}

Rational RationalMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    RationalMatrix a = *this;
    Rational d(1);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int i = col; i < rows_; ++i)
            if (a.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int j = 0; j < cols_; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            d = -d;
        }
        d *= a.at(col, col);
        Rational inv = 1 / a.at(col, col);
        for (int i = col + 1; i < rows_; ++i) {
            if (a.at(i, col) == 0) continue;
            Rational f = a.at(i, col) * inv;
            for (int j = col; j < cols_; ++j) a.at(i, j) -= f * a.at(col, j);
        }
    }
    return d;
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    RationalMatrix aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    Elimination e = eliminate(aug);
    for (int i = 0; i < rows_; ++i)
        if (i >= static_cast<int>(e.pivot_cols.size()) || e.pivot_cols[i] != i)
            throw std::domain_error("matrix is singular");
    RationalMatrix inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) inv.at(i, j) = e.rref.at(i, cols_ + j);
    return inv;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) out << " ";
            out << at(i, j).get_str();
        }
        out << "\n";
    }
    return out.str();
}

RationalMatrix RationalMatrix::parse(const std::string& text) {
    std::vector<std::vector<Rational>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<Rational> row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_rational(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix text");
    int cols = static_cast<int>(rows[0].size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
    RationalMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

// ---- PolyMatrix ------------------------------------------------------------

PolyMatrix PolyMatrix::identity(int n, int nvars) {
    PolyMatrix m(n, n, nvars);
    for (int i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(nvars, Rational(1));
    return m;
}

PolyMatrix PolyMatrix::from_rational(const RationalMatrix& m, int nvars) {
    PolyMatrix r(m.rows(), m.cols(), nvars);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r.at(i, j) = Polynomial::constant(nvars, m.at(i, j));
    return r;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : entries_)
        if (!p.is_zero()) return false;
    return true;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_ || nvars_ != o.nvars_)
        throw std::invalid_argument("poly matrix shape/nvars mismatch");
    PolyMatrix r(rows_, o.cols_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
        }
    return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || nvars_ != o.nvars_)
        throw std::invalid_argument("poly matrix shape/nvars mismatch");
    PolyMatrix r(rows_, cols_, nvars_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || nvars_ != o.nvars_)
        throw std::invalid_argument("poly matrix shape/nvars mismatch");
    PolyMatrix r(rows_, cols_, nvars_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        r.entries_[i] = entries_[i] - o.entries_[i];
    return r;
}

std::vector<Polynomial> PolyMatrix::apply(const std::vector<Polynomial>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("poly matrix/vector shape mismatch");
    std::vector<Polynomial> r(rows_, Polynomial::zero(nvars_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] = r[i] + at(i, j) * v[j];
    return r;
}

RationalMatrix PolyMatrix::evaluate(const std::vector<Rational>& point) const {
    RationalMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).evaluate(point);
    return r;
}

namespace {

// det of the minor given by rows [row..n) and the columns set in mask
Polynomial det_rec(const PolyMatrix& m, int row, std::uint64_t mask,
                   std::unordered_map<std::uint64_t, Polynomial>& memo) {
    int n = m.rows();
    if (row == n) return Polynomial::constant(m.nvars(), Rational(1));
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Polynomial acc = Polynomial::zero(m.nvars());
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        if (!(mask & (std::uint64_t(1) << col))) continue;
        if (!m.at(row, col).is_zero()) {
            Polynomial sub = det_rec(m, row + 1, mask & ~(std::uint64_t(1) << col), memo);
            Polynomial contrib = m.at(row, col) * sub;
            acc = sign > 0 ? acc + contrib : acc - contrib;
        }
        sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
}

}  // namespace

Polynomial poly_det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (m.rows() == 0) return Polynomial::constant(m.nvars(), Rational(1));
    if (m.rows() > 62) throw std::invalid_argument("poly_det: matrix too large");
    std::unordered_map<std::uint64_t, Polynomial> memo;
    std::uint64_t full = (m.rows() == 64) ? ~std::uint64_t(0)
                                          : ((std::uint64_t(1) << m.rows()) - 1);
    return det_rec(m, 0, full, memo);
}

NilpotencyResult is_nilpotent(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("nilpotency of non-square matrix");
    int n = m.rows();
    if (n == 0) return {true, 1};
    PolyMatrix p = m;
    for (int k = 1; k <= n; ++k) {
        if (p.is_zero()) return {true, k};
        if (k < n) p = p * m;
    }
    return {false, 0};
}

NilpotencyResult is_nilpotent(const RationalMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("nilpotency of non-square matrix");
    int n = m.rows();
    if (n == 0) return {true, 1};
    auto is_zero = [](const RationalMatrix& a) {
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                if (a.at(i, j) != 0) return false;
        return true;
    };
    RationalMatrix p = m;
    for (int k = 1; k <= n; ++k) {
        if (is_zero(p)) return {true, k};
        if (k < n) p = p * m;
    }
    return {false, 0};
}

PolyMatrix unipotent_inverse(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("unipotent_inverse of non-square matrix");
    int n = m.rows();
    PolyMatrix nil = m - PolyMatrix::identity(n, m.nvars());
    auto np = is_nilpotent(nil);
    if (!np.nilpotent) throw std::domain_error("matrix is not unipotent");
    PolyMatrix inv = PolyMatrix::identity(n, m.nvars());
    PolyMatrix power = PolyMatrix::identity(n, m.nvars());
    for (int k = 1; k < np.witness; ++k) {
        power = power * nil;
        inv = (k % 2 == 1) ? inv - power : inv + power;
    }
    return inv;
}

}  // namespace keller
