#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "keller/matrix.hpp"
#include "test_helpers.hpp"

using namespace keller;
using keller::testing::random_polynomial;

namespace {

Polynomial P(const std::string& s, int nvars) { return Polynomial::parse(s, nvars); }

PolyMatrix random_strict_upper(std::mt19937_64& eng, int n, int nvars) {
    PolyMatrix m(n, n, nvars);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.at(i, j) = random_polynomial(eng, nvars, 3, 2);
    return m;
}

}  // namespace

TEST_CASE("poly_det basics") {
    CHECK(poly_det(PolyMatrix::identity(2, 2)) == Polynomial::constant(2, Rational(1)));

    // Jacobian of (x1 + x2^3, x2)
    PolyMatrix j(2, 2, 2);
    j.at(0, 0) = P("1", 2);
    j.at(0, 1) = P("3*x2^2", 2);
    j.at(1, 1) = P("1", 2);
    CHECK(poly_det(j) == Polynomial::constant(2, Rational(1)));

    PolyMatrix rep(2, 2, 1);
    rep.at(0, 0) = rep.at(1, 0) = P("x1", 1);
    rep.at(0, 1) = rep.at(1, 1) = P("x1^2 + 1", 1);
    CHECK(poly_det(rep) == Polynomial::zero(1));

    CHECK_THROWS_AS(poly_det(PolyMatrix(2, 3, 1)), std::invalid_argument);
}

TEST_CASE("poly_det is multiplicative") {
    std::mt19937_64 eng(41);
    for (int i = 0; i < 10; ++i) {
        PolyMatrix a(2, 2, 2), b(2, 2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a.at(r, c) = random_polynomial(eng, 2, 2, 1);
                b.at(r, c) = random_polynomial(eng, 2, 2, 1);
            }
        CHECK(poly_det(a * b) == poly_det(a) * poly_det(b));
    }
}

TEST_CASE("poly matrix multiplication") {
    std::mt19937_64 eng(43);
    PolyMatrix m(2, 2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m.at(r, c) = random_polynomial(eng, 2);
    CHECK(m * PolyMatrix::identity(2, 2) == m);

    PolyMatrix upper(2, 2, 1);
    upper.at(0, 1) = P("x1^2", 1);
    CHECK((upper * upper).is_zero());
    CHECK_THROWS_AS(m * PolyMatrix(3, 2, 2), std::invalid_argument);
}

TEST_CASE("nilpotency") {
    PolyMatrix jh(2, 2, 2);
    jh.at(0, 1) = P("3*x2^2", 2);
    auto r = is_nilpotent(jh);
    CHECK(r.nilpotent);
    CHECK(r.witness == 2);

    CHECK_FALSE(is_nilpotent(PolyMatrix::identity(3, 1)).nilpotent);
    auto z = is_nilpotent(PolyMatrix(2, 2, 1));
    CHECK(z.nilpotent);
    CHECK(z.witness == 1);
}

TEST_CASE("nilpotent implies det(I + t M) = 1") {
    std::mt19937_64 eng(47);
    for (int i = 0; i < 10; ++i) {
        int n = 3;
        // strictly upper triangular in x1..x2, then adjoin the scalar t as a
        // fresh last variable
        PolyMatrix m = random_strict_upper(eng, n, 2);
        PolyMatrix a = PolyMatrix::identity(n, 3);
        Polynomial t = Polynomial::variable(3, 3);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                Polynomial lifted(3);
                for (const auto& [mon, coef] : m.at(r, c).terms()) {
                    Monomial mm(3);
                    mm.exps[0] = mon.exps[0];
                    mm.exps[1] = mon.exps[1];
                    lifted.add_term(mm, coef);
                }
                a.at(r, c) = a.at(r, c) + t * lifted;
            }
        REQUIRE(is_nilpotent(m).nilpotent);
        CHECK(poly_det(a) == Polynomial::constant(3, Rational(1)));
    }
}

TEST_CASE("unipotent inverse") {
    CHECK(unipotent_inverse(PolyMatrix::identity(3, 2)) == PolyMatrix::identity(3, 2));

    PolyMatrix m = PolyMatrix::identity(2, 2);
    m.at(0, 1) = P("3*x2^2", 2);
    PolyMatrix inv = unipotent_inverse(m);
    CHECK(inv.at(0, 1) == P("-3*x2^2", 2));
    CHECK(m * inv == PolyMatrix::identity(2, 2));
    CHECK(inv * m == PolyMatrix::identity(2, 2));

    std::mt19937_64 eng(53);
    for (int i = 0; i < 10; ++i) {
        PolyMatrix u = PolyMatrix::identity(4, 2) + random_strict_upper(eng, 4, 2);
        PolyMatrix v = unipotent_inverse(u);
        CHECK(u * v == PolyMatrix::identity(4, 2));
        CHECK(v * u == PolyMatrix::identity(4, 2));
    }

    CHECK_THROWS_AS(unipotent_inverse(PolyMatrix(2, 2, 1)), std::domain_error);
}

TEST_CASE("rational kernel and rank") {
    RationalMatrix shift(2, 2);
    shift.at(0, 1) = 1;
    auto k = rational_kernel(shift);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(rational_rank(shift) == 1);

    CHECK(rational_kernel(RationalMatrix::identity(3)).empty());
    CHECK(rational_rank(RationalMatrix::identity(3)) == 3);

    RationalMatrix zero(2, 2);
    auto kz = rational_kernel(zero);
    REQUIRE(kz.size() == 2);
    CHECK(kz[0] == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(kz[1] == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(rational_rank(zero) == 0);
}

TEST_CASE("rank + kernel dimension = cols on random matrices") {
    std::mt19937_64 eng(59);
    for (int i = 0; i < 30; ++i) {
        int rows = static_cast<int>(keller::testing::rand_int(eng, 1, 5));
        int cols = static_cast<int>(keller::testing::rand_int(eng, 1, 5));
        RationalMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                m.at(r, c) = keller::testing::rand_int(eng, -3, 3);
        auto kernel = rational_kernel(m);
        CHECK(rational_rank(m) + static_cast<int>(kernel.size()) == cols);
        for (const auto& v : kernel) {
            auto image = m.apply(v);
            for (const auto& x : image) CHECK(x == 0);
        }
    }
}

TEST_CASE("rational matrix inverse and det") {
    RationalMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    CHECK(swap.inverse() == swap);
    CHECK(swap.det() == -1);
    CHECK(RationalMatrix::identity(3).det() == 1);
    RationalMatrix singular(2, 2);
    singular.at(0, 0) = 1;
    CHECK_THROWS_AS(singular.inverse(), std::domain_error);
}

TEST_CASE("rational matrix text round trip") {
    RationalMatrix m(2, 3);
    m.at(0, 0) = make_rational(-1, 2);
    m.at(1, 2) = 5;
    CHECK(RationalMatrix::parse(m.to_string()) == m);
    CHECK_THROWS_AS(RationalMatrix::parse("1 2\n3\n"), std::invalid_argument);
}
