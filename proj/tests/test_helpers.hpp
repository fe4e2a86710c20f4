#ifndef KELLER_TEST_HELPERS_HPP
#define KELLER_TEST_HELPERS_HPP

#include <random>

#include "keller/polynomial.hpp"

namespace keller::testing {

inline long rand_int(std::mt19937_64& eng, long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational random_rational(std::mt19937_64& eng) {
    return make_rational(rand_int(eng, -9, 9), rand_int(eng, 1, 5));
}

inline Polynomial random_polynomial(std::mt19937_64& eng, int nvars, int max_terms = 5,
                                    unsigned max_exp = 3) {
    Polynomial p(nvars);
    long terms = rand_int(eng, 0, max_terms);
    for (long t = 0; t < terms; ++t) {
        Monomial m(nvars);
        for (int j = 0; j < nvars; ++j)
            m.exps[j] = static_cast<unsigned>(rand_int(eng, 0, max_exp));
        p.add_term(m, random_rational(eng));
    }
    return p;
}

inline Polynomial random_homogeneous(std::mt19937_64& eng, int nvars, unsigned degree,
                                     int terms = 4) {
    Polynomial p(nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(nvars);
        for (unsigned k = 0; k < degree; ++k)
            m.exps[rand_int(eng, 0, nvars - 1)] += 1;
        Rational c = random_rational(eng);
        if (c != 0) p.add_term(m, c);
    }
    return p;
}

}  // namespace keller::testing

#endif
