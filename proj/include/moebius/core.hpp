#pragma once

// Shared scalar types, tolerance settings, and the error hierarchy.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace moebius {

using cplx = std::complex<double>;

/// Numerical gates used by every decision in the library.
///
/// The underlying predicates are exact statements about complex numbers; a
/// floating implementation has to declare where "equal" and "on the unit
/// circle" begin. All of them are reported alongside verdicts.
struct Tolerances {
    /// A modulus m counts as 1 iff |m - 1| <= eps_unit. A trace counts as
    /// real iff |Im t| <= eps_unit * (1 + |t|).
    double eps_unit = 1e-9;
    /// Complex equality: |x - y| <= equality * max(1, |x|, |y|).
    double equality = 1e-9;
    /// Largest exponent scanned by the root-of-unity test.
    int kmax = 64;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `position` is a 0-based character offset.
class InputError : public Error {
public:
    InputError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Coefficient quadruple with ad - bc numerically zero.
class InvalidMapError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a nonidentity map received the identity.
class IdentityMapError : public Error {
public:
    IdentityMapError() : Error("operation is undefined for the identity map") {}
    using Error::Error;
};

/// Coincident points handed to a construction that needs distinct ones.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Input is covered by the theory but not by this implementation.
class UnsupportedSizeError : public Error {
public:
    using Error::Error;
};

inline bool approx_equal(cplx x, cplx y, double tol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

/// Records the smallest distance between a gated quantity and its threshold.
class Margin {
public:
    void note(double quantity, double threshold) {
        value_ = std::min(value_, std::abs(quantity - threshold));
    }
    void merge(const Margin& other) { value_ = std::min(value_, other.value_); }
    double value() const noexcept { return value_; }
    bool empty() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }

private:
    double value_ = std::numeric_limits<double>::infinity();
};

inline bool is_unit_modulus(cplx z, const Tolerances& tol, Margin* margin = nullptr) {
    const double dist = std::abs(std::abs(z) - 1.0);
    if (margin) margin->note(dist, tol.eps_unit);
    return dist <= tol.eps_unit;
}

inline bool is_real_within(cplx z, const Tolerances& tol, Margin* margin = nullptr) {
    const double rel = std::abs(z.imag()) / (1.0 + std::abs(z));
    if (margin) margin->note(rel, tol.eps_unit);
    return rel <= tol.eps_unit;
}

/// Membership of a complex trace in the real interval [-2, 2]: the trace
/// has to be real and its real part within the interval (both eps_unit gated).
inline bool in_trace_interval(cplx t, const Tolerances& tol, Margin* margin = nullptr) {
    const bool real = is_real_within(t, tol, margin);
    const double excess = std::abs(t.real()) - 2.0;
    if (margin) margin->note(excess, tol.eps_unit);
    return real && excess <= tol.eps_unit;
}

}  // namespace moebius
