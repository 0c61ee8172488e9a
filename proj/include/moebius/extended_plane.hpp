#pragma once

// Points of the extended complex plane C u {inf}, the chordal metric on the
// Riemann sphere, and the text form of complex literals.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "moebius/core.hpp"

namespace moebius {

/// A finite complex number or the single point at infinity.
///
/// Infinity is its own state; a finite value never holds an IEEE infinity
/// or NaN component.
class ExtendedComplex {
public:
    ExtendedComplex() = default;
    ExtendedComplex(cplx z) : value_(z) {  // NOLINT: implicit by intent
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgumentError("finite point with non-finite component");
    }
    ExtendedComplex(double re, double im = 0.0) : ExtendedComplex(cplx{re, im}) {}  // NOLINT

    static ExtendedComplex infinity() {
        ExtendedComplex p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }

    /// Finite value; throws for the point at infinity.
    cplx value() const {
        if (infinite_) throw InvalidArgumentError("the point at infinity has no finite value");
        return value_;
    }

    friend bool operator==(const ExtendedComplex& p, const ExtendedComplex& q) {
        if (p.infinite_ || q.infinite_) return p.infinite_ == q.infinite_;
        return p.value_ == q.value_;
    }

private:
    cplx value_{};
    bool infinite_ = false;
};

/// z -> 1/z on the sphere with 1/0 = inf and 1/inf = 0.
inline ExtendedComplex reciprocal(const ExtendedComplex& p) {
    if (p.is_infinity()) return ExtendedComplex{};
    const cplx z = p.value();
    if (z == cplx{}) return ExtendedComplex::infinity();
    const cplx r = 1.0 / z;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return ExtendedComplex::infinity();
    return r;
}

/// Chordal distance 2|p - q| / (sqrt(1+|p|^2) sqrt(1+|q|^2)), in [0, 2].
inline double chordal_distance(const ExtendedComplex& p, const ExtendedComplex& q) {
    if (p.is_infinity() && q.is_infinity()) return 0.0;
    if (p.is_infinity()) return std::min(2.0, 2.0 / std::hypot(1.0, std::abs(q.value())));
    if (q.is_infinity()) return std::min(2.0, 2.0 / std::hypot(1.0, std::abs(p.value())));
    const cplx a = p.value();
    const cplx b = q.value();
    const double d = 2.0 * std::abs(a - b) / (std::hypot(1.0, std::abs(a)) * std::hypot(1.0, std::abs(b)));
    return std::min(2.0, d);
}

namespace detail {

// DEC := digits ['.' digits] | '.' digits, optionally followed by an exponent.
inline std::optional<double> scan_decimal(std::string_view s, std::size_t& pos) {
    const std::size_t start = pos;
    std::size_t i = pos;
    std::size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    }
    if (digits == 0) return std::nullopt;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        std::size_t exp_digits = 0;
        while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j, ++exp_digits;
        if (exp_digits > 0) i = j;
    }
    double value = 0.0;
    const auto res = std::from_chars(s.data() + start, s.data() + i, value);
    if (res.ec != std::errc{} || res.ptr != s.data() + i) return std::nullopt;
    pos = i;
    return value;
}

inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s, std::size_t& offset) {
    offset = 0;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1), ++offset;
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace detail

/// Parses `[SIGN] DEC [SIGN DEC 'i'] | [SIGN] DEC 'i' | 'inf'`.
///
/// `base_offset` is added to reported error positions so that callers
/// parsing a larger string (a map or matrix) can point into it.
inline ExtendedComplex parse_point(std::string_view text, std::size_t base_offset = 0) {
    std::size_t lead = 0;
    const std::string_view s = detail::trim(text, lead);
    const std::size_t off = base_offset + lead;
    if (s.empty()) throw InputError("empty complex literal", off);
    if (s == "inf") return ExtendedComplex::infinity();

    std::size_t pos = 0;
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') sign = (s[pos++] == '-') ? -1.0 : 1.0;
    const auto first = detail::scan_decimal(s, pos);
    if (!first) throw InputError("expected a decimal number", off + pos);
    const double re = sign * *first;
    if (pos == s.size()) return cplx{re, 0.0};
    if (s[pos] == 'i') {
        if (pos + 1 != s.size()) throw InputError("unexpected text after imaginary unit", off + pos + 1);
        return cplx{0.0, re};
    }
    if (s[pos] != '+' && s[pos] != '-') throw InputError("expected '+', '-' or 'i'", off + pos);
    const double sign2 = (s[pos++] == '-') ? -1.0 : 1.0;
    const auto second = detail::scan_decimal(s, pos);
    if (!second) throw InputError("expected a decimal number", off + pos);
    if (pos == s.size() || s[pos] != 'i') throw InputError("expected imaginary unit 'i'", off + pos);
    if (pos + 1 != s.size()) throw InputError("unexpected text after imaginary unit", off + pos + 1);
    return cplx{re, sign2 * *second};
}

/// Shortest round-trip text ("3", "-2i", "1.5-0.25i", "inf").
inline std::string format_point(const ExtendedComplex& p) {
    if (p.is_infinity()) return "inf";
    const cplx z = p.value();
    if (z.imag() == 0.0) return detail::format_double(z.real());
    if (z.real() == 0.0) return detail::format_double(z.imag()) + "i";
    std::string im = detail::format_double(z.imag());
    if (im.front() != '-') im.insert(im.begin(), '+');
    return detail::format_double(z.real()) + im + "i";
}

inline std::string format_complex(cplx z) { return format_point(ExtendedComplex{z}); }

}  // namespace moebius
