#ifndef KELLER_ERRORS_HPP
#define KELLER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace keller {

// A mathematical negative: the map has no polynomial inverse within the
// requested degree bound (or none at all).
struct NoPolynomialInverse : std::runtime_error {
    explicit NoPolynomialInverse(const std::string& what) : std::runtime_error(what) {}
};

// A bound or identity the theory guarantees failed to hold. This should
// never fire; callers surface it loudly (CLI exit code 3).
struct TheoremContradiction : std::logic_error {
    explicit TheoremContradiction(const std::string& what) : std::logic_error(what) {}
};

}  // namespace keller

#endif
