#ifndef KELLER_RATIONAL_HPP
#define KELLER_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace keller {

// Exact rational scalar. GMP keeps values in lowest terms with positive
// denominator after any arithmetic; raw constructions go through make_rational
// which canonicalizes.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

// d^r for small integer bases/exponents used in bound reports.
inline long ipow(long base, long exp) {
    long r = 1;
    for (long i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace keller

#endif
