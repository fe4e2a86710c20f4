#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "keller/druzkowski.hpp"
#include "test_helpers.hpp"

using namespace keller;

namespace {

Polynomial P(const std::string& s, int nvars) { return Polynomial::parse(s, nvars); }

DruzkowskiSpec shift_spec() {
    RationalMatrix a(2, 2);
    a.at(0, 1) = 1;
    return DruzkowskiSpec{std::move(a), 3};
}

}  // namespace

TEST_CASE("expand") {
    CHECK(expand(shift_spec()) == PolyMap(2, {P("x1 + x2^3", 2), P("x2", 2)}));

    DruzkowskiSpec zero{RationalMatrix(3, 3), 3};
    CHECK(expand(zero) == PolyMap::identity(3));

    RationalMatrix a(3, 3);
    a.at(0, 1) = a.at(0, 2) = a.at(1, 2) = 1;
    PolyMap f = expand(DruzkowskiSpec{std::move(a), 3});
    CHECK(f[0] == P("x1", 3) + P("x2 + x3", 3).pow(3));
    CHECK(f[1] == P("x2 + x3^3", 3));
    CHECK(f[2] == P("x3", 3));

    CHECK_THROWS_AS(expand(DruzkowskiSpec{RationalMatrix(2, 2), 1}),
                    std::invalid_argument);
}

TEST_CASE("structural jacobian") {
    PolyMatrix jh = structural_jacobian(shift_spec());
    CHECK(jh.at(0, 1) == P("3*x2^2", 2));
    CHECK(jh.at(0, 0) == Polynomial::zero(2));
    CHECK(jh.at(1, 0) == Polynomial::zero(2));

    CHECK(structural_jacobian(DruzkowskiSpec{RationalMatrix(2, 2), 3}).is_zero());

    // the closed form is an identity with the direct Jacobian
    for (int i = 0; i < 50; ++i) {
        auto [n, d] = std::pair{2 + i % 3, 2 + i % 2};
        DruzkowskiSpec spec = gen_random_druzkowski(n, d, 100 + i);
        PolyMatrix direct = jacobian(expand(spec)) - PolyMatrix::identity(n, n);
        CHECK(structural_jacobian(spec) == direct);
    }
}

TEST_CASE("kernel equality ker JH = ker A") {
    CHECK(kernel_equality_check(shift_spec()));
    CHECK(kernel_equality_check(DruzkowskiSpec{RationalMatrix(2, 2), 3}));
    CHECK(kernel_equality_check(DruzkowskiSpec{RationalMatrix::identity(3), 2}));
}

TEST_CASE("keller facts") {
    DruzkowskiSpec tri = gen_triangular_druzkowski(4, 3, 9);
    auto rep = keller_facts_check(tri);
    CHECK(rep.keller);
    CHECK(rep.jh_nilpotent);
    CHECK(rep.det_a == 0);
    CHECK(rep.rank_a <= 3);
    CHECK(rep.passed);

    // A = I, d = 2: det JF is a product of (1 + 2 x_i), not constant
    auto diag = keller_facts_check(DruzkowskiSpec{RationalMatrix::identity(2), 2});
    CHECK_FALSE(diag.keller);
    CHECK_FALSE(diag.jh_nilpotent);

    auto zero = keller_facts_check(DruzkowskiSpec{RationalMatrix(2, 2), 3});
    CHECK(zero.keller);
    CHECK(zero.jh_nilpotent);
}

TEST_CASE("keller facts over a generated corpus") {
    for (int i = 0; i < 40; ++i) {
        auto [n, d] = std::pair{2 + i % 3, 2 + i % 2};
        auto rep = keller_facts_check(gen_triangular_druzkowski(n, d, 500 + i));
        CHECK(rep.keller);
        CHECK(rep.passed);
        // random specs may or may not be Keller; the internal cross-checks
        // between nilpotency, det A and rank A must still be consistent
        CHECK(keller_facts_check(gen_random_druzkowski(n, d, 600 + i)).passed);
    }
}

TEST_CASE("corpus entries") {
    CorpusEntry e = corpus_entry_triangular_keller(3, 2, 42);
    CHECK(e.map == gen_triangular_keller(3, 2, 42));
    CHECK(e.provenance == "triangular-keller-n3-d2-s42");
    CHECK(e.expected_keller);
    CHECK(is_keller(e.map).keller == e.expected_keller);

    CorpusEntry t = corpus_entry_triangular_druzkowski(4, 3, 42);
    CHECK(t.map == expand(gen_triangular_druzkowski(4, 3, 42)));
    CHECK(t.provenance == "triangular-druzkowski-n4-d3-s42");
    CHECK(is_keller(t.map).keller == t.expected_keller);
}

TEST_CASE("triangular druzkowski generator") {
    DruzkowskiSpec a = gen_triangular_druzkowski(2, 3, 5);
    CHECK(a.A.at(1, 0) == 0);
    CHECK(a.A.at(0, 0) == 0);
    CHECK(a.A.at(1, 1) == 0);

    CHECK(expand(gen_triangular_druzkowski(1, 3, 5)) == PolyMap::identity(1));

    // determinism
    DruzkowskiSpec b = gen_triangular_druzkowski(4, 3, 5);
    DruzkowskiSpec c = gen_triangular_druzkowski(4, 3, 5);
    CHECK(b.A == c.A);
    CHECK(expand(b) == expand(c));
}

TEST_CASE("triangular keller generator") {
    for (int i = 0; i < 30; ++i) {
        auto [n, d] = std::pair{1 + i % 4, 2 + i % 2};
        PolyMap f = gen_triangular_keller(n, d, 200 + i);
        CHECK(is_keller(f).keller);
        auto dec = decompose(f);
        CHECK(dec.linear_part == RationalMatrix::identity(n));
        CHECK(dec.higher_part.is_zero() == (n == 1 || dec.degree == 0));
    }
    CHECK(gen_triangular_keller(1, 3, 1) == PolyMap::identity(1));
    CHECK(gen_triangular_keller(3, 3, 77) == gen_triangular_keller(3, 3, 77));
}

TEST_CASE("spec file round trip") {
    DruzkowskiSpec spec = gen_triangular_druzkowski(3, 3, 13);
    DruzkowskiSpec back = DruzkowskiSpec::parse(spec.to_text());
    CHECK(back.A == spec.A);
    CHECK(back.d == spec.d);
    CHECK_THROWS_AS(DruzkowskiSpec::parse("0 1\n0 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(DruzkowskiSpec::parse("d: 1\n0\n"), std::invalid_argument);
}
