#ifndef SECRECY_ERRORS_HPP
#define SECRECY_ERRORS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace secrecy {

/// Argument outside an operation's domain (negative power, non-stochastic matrix, ...).
class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what an exhaustive routine will enumerate.
class UnsupportedSize : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// Helper/helped combination that does not satisfy the jamming condition.
class InvalidPair : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver failed to bracket or converge.
class NumericalFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidInput(what);
}

inline void require_positive(double v, const std::string& name) {
    if (!std::isfinite(v) || !(v > 0.0)) throw InvalidInput(name + " must be positive and finite");
}

inline void require_non_negative(double v, const std::string& name) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidInput(name + " must be non-negative and finite");
}

}  // namespace detail

}  // namespace secrecy

#endif
