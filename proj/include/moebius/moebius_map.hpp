#pragma once

// Moebius transformations z -> (az+b)/(cz+d): construction, normalization to
// determinant-one matrices, evaluation, composition and inversion.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "moebius/extended_plane.hpp"

namespace moebius {

/// Plain 2x2 complex matrix [[m11, m12], [m21, m22]].
struct Mat2 {
    cplx m11{}, m12{}, m21{}, m22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx det() const { return m11 * m22 - m12 * m21; }
    cplx trace() const { return m11 + m22; }
    double max_abs() const {
        return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
    }
    Mat2 adjugate() const { return {m22, -m12, -m21, m11}; }
    Mat2 inverse() const {
        const cplx d = det();
        return {m22 / d, -m12 / d, -m21 / d, m11 / d};
    }
    Mat2 conj() const { return {std::conj(m11), std::conj(m12), std::conj(m21), std::conj(m22)}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
                x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
    }
    friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.m11, s * x.m12, s * x.m21, s * x.m22}; }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21, x.m22 + y.m22};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21, x.m22 - y.m22};
    }
    Mat2 operator-() const { return {-m11, -m12, -m21, -m22}; }

    std::array<cplx, 4> entries() const { return {m11, m12, m21, m22}; }
};

/// Largest entrywise distance between two matrices.
inline double max_entry_distance(const Mat2& x, const Mat2& y) { return (x - y).max_abs(); }

/// The map z -> (az+b)/(cz+d) with ad - bc != 0.
///
/// Coefficients are kept as given; equality of maps is projective and goes
/// through normalize().
class MoebiusMap {
public:
    /// Relative singularity gate: |ad - bc| < kDegeneracy * max(|a|,|b|,|c|,|d|)^2.
    static constexpr double kDegeneracy = 1e-12;

    MoebiusMap() : coeffs_(Mat2::identity()) {}
    MoebiusMap(cplx a, cplx b, cplx c, cplx d) : MoebiusMap(Mat2{a, b, c, d}) {}
    explicit MoebiusMap(const Mat2& m) : coeffs_(m) {
        for (const cplx& e : m.entries())
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
                throw InvalidMapError("non-finite coefficient");
        const double scale = m.max_abs();
        if (scale == 0.0) throw InvalidMapError("all coefficients are zero");
        const double det = std::abs(((1.0 / scale) * m).det());
        if (det == 0.0 || det < kDegeneracy)
            throw InvalidMapError("singular coefficients: ad - bc is zero relative to coefficient scale");
    }

    static MoebiusMap identity() { return {}; }
    /// z -> mu z
    static MoebiusMap scaling(cplx mu) { return {mu, 0.0, 0.0, 1.0}; }
    /// z -> z + t
    static MoebiusMap translation(cplx t) { return {1.0, t, 0.0, 1.0}; }

    cplx a() const { return coeffs_.m11; }
    cplx b() const { return coeffs_.m12; }
    cplx c() const { return coeffs_.m21; }
    cplx d() const { return coeffs_.m22; }
    const Mat2& coefficients() const { return coeffs_; }

private:
    Mat2 coeffs_;
};

/// Determinant-one matrix standing for a +/- pair.
///
/// The stored representative follows a fixed sign rule: the first entry in
/// (m11, m12, m21, m22) with modulus above 1e-12 has positive real part, or
/// negligible real part and positive imaginary part. `flipped()` records
/// whether the sign of the input had to be reversed to get there.
class UnimodularMatrix {
public:
    static constexpr double kZero = 1e-12;

    UnimodularMatrix() : m_(Mat2::identity()) {}

    /// Sign-reduces a matrix that already has determinant one.
    static UnimodularMatrix canonical(const Mat2& m) {
        UnimodularMatrix u;
        u.m_ = m;
        u.flipped_ = needs_flip(m);
        if (u.flipped_) u.m_ = -m;
        return u;
    }

    const Mat2& matrix() const { return m_; }
    bool flipped() const { return flipped_; }
    cplx trace() const { return m_.trace(); }
    cplx det() const { return m_.det(); }

    /// Equality of +/- classes, entrywise within `tol`.
    bool approx_equal(const UnimodularMatrix& other, double tol = 1e-9) const {
        return std::min(max_entry_distance(m_, other.m_), max_entry_distance(m_, -other.m_)) <= tol;
    }

private:
    static bool needs_flip(const Mat2& m) {
        for (const cplx& e : m.entries()) {
            const double r = std::abs(e);
            if (r <= kZero) continue;
            if (std::abs(e.real()) <= kZero * r) return e.imag() < 0.0;
            return e.real() < 0.0;
        }
        return false;
    }

    Mat2 m_;
    bool flipped_ = false;
};

/// Principal square root with argument in (-pi/2, pi/2].
inline cplx principal_sqrt(cplx z) {
    // std::sqrt puts -1 - 0i on the lower half; a signed zero must not pick the branch.
    if (z.imag() == 0.0) z = cplx{z.real(), 0.0};
    return std::sqrt(z);
}

/// M_f = (1/sqrt(ad - bc)) [[a, b], [c, d]], sign-reduced.
inline UnimodularMatrix normalize(const MoebiusMap& f) {
    const Mat2& raw = f.coefficients();
    const Mat2 m = (1.0 / raw.max_abs()) * raw;
    const cplx s = principal_sqrt(m.det());
    return UnimodularMatrix::canonical((1.0 / s) * m);
}

inline MoebiusMap from_matrix(const Mat2& m) { return MoebiusMap(m); }

/// Projective equality of maps.
inline bool same_map(const MoebiusMap& f, const MoebiusMap& g, double tol = 1e-9) {
    return normalize(f).approx_equal(normalize(g), tol);
}

inline bool is_identity(const MoebiusMap& f, double tol = 1e-9) {
    return normalize(f).approx_equal(UnimodularMatrix{}, tol);
}

namespace detail {
inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace detail

inline ExtendedComplex apply(const MoebiusMap& f, const ExtendedComplex& z) {
    using detail::finite;
    const Mat2& m = f.coefficients();
    if (z.is_infinity()) {
        if (m.m21 == cplx{}) return ExtendedComplex::infinity();
        return m.m11 / m.m21;
    }
    const cplx x = z.value();
    cplx num = m.m11 * x + m.m12;
    cplx den = m.m21 * x + m.m22;
    if (!finite(num) || !finite(den)) {
        // Divide through by z to keep large arguments in range.
        const cplx w = 1.0 / x;
        num = m.m11 + m.m12 * w;
        den = m.m21 + m.m22 * w;
    }
    if (den == cplx{}) return ExtendedComplex::infinity();
    const cplx r = num / den;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return ExtendedComplex::infinity();
    return r;
}

// Exact-match overloads; without them argument-dependent lookup prefers std::apply.
inline ExtendedComplex apply(MoebiusMap f, cplx z) { return apply(f, ExtendedComplex{z}); }
inline ExtendedComplex apply(MoebiusMap f, double x) { return apply(f, ExtendedComplex{x}); }

/// f o g, coefficient matrices multiplied.
inline MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
    return MoebiusMap(f.coefficients() * g.coefficients());
}

inline MoebiusMap inverse(const MoebiusMap& f) { return MoebiusMap(f.coefficients().adjugate()); }

/// h^-1 o f o h
inline MoebiusMap conjugate_by(const MoebiusMap& f, const MoebiusMap& h) {
    return compose(inverse(h), compose(f, h));
}

namespace detail {

// Coefficients of the map sending (p1, p2, p3) to (0, 1, inf).
inline Mat2 cross_ratio_matrix(const ExtendedComplex& p1, const ExtendedComplex& p2,
                               const ExtendedComplex& p3) {
    if (p1.is_infinity()) {
        const cplx b = p2.value(), c = p3.value();
        return {0.0, b - c, 1.0, -c};
    }
    if (p2.is_infinity()) {
        const cplx a = p1.value(), c = p3.value();
        return {1.0, -a, 1.0, -c};
    }
    if (p3.is_infinity()) {
        const cplx a = p1.value(), b = p2.value();
        return {1.0, -a, 0.0, b - a};
    }
    const cplx a = p1.value(), b = p2.value(), c = p3.value();
    return {b - c, -a * (b - c), b - a, -c * (b - a)};
}

inline void require_distinct(const ExtendedComplex& p, const ExtendedComplex& q, const ExtendedComplex& r,
                             const char* which) {
    constexpr double kMinSeparation = 1e-12;
    if (chordal_distance(p, q) <= kMinSeparation || chordal_distance(p, r) <= kMinSeparation ||
        chordal_distance(q, r) <= kMinSeparation)
        throw DegenerateInputError(std::string(which) + " points are not pairwise distinct");
}

}  // namespace detail

/// The unique map with p_i -> q_i.
inline MoebiusMap from_three_points(const ExtendedComplex& p1, const ExtendedComplex& p2,
                                    const ExtendedComplex& p3, const ExtendedComplex& q1,
                                    const ExtendedComplex& q2, const ExtendedComplex& q3) {
    detail::require_distinct(p1, p2, p3, "source");
    detail::require_distinct(q1, q2, q3, "target");
    const Mat2 sp = detail::cross_ratio_matrix(p1, p2, p3);
    const Mat2 sq = detail::cross_ratio_matrix(q1, q2, q3);
    return MoebiusMap(sq.adjugate() * sp);
}

namespace detail {

inline std::vector<std::pair<std::string_view, std::size_t>> split(std::string_view s, char sep) {
    std::vector<std::pair<std::string_view, std::size_t>> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t next = s.find(sep, start);
        if (next == std::string_view::npos) {
            parts.emplace_back(s.substr(start), start);
            return parts;
        }
        parts.emplace_back(s.substr(start, next - start), start);
        start = next + 1;
    }
}

inline cplx parse_coefficient(std::string_view text, std::size_t offset) {
    const ExtendedComplex p = parse_point(text, offset);
    if (p.is_infinity()) throw InputError("coefficient may not be inf", offset);
    return p.value();
}

}  // namespace detail

/// Parses "a,b,c,d".
inline MoebiusMap parse_map(std::string_view text) {
    const auto parts = detail::split(text, ',');
    if (parts.size() != 4)
        throw InputError("a map needs exactly four comma-separated coefficients, got " +
                             std::to_string(parts.size()),
                         parts.size() < 4 ? text.size() : parts[4].second);
    std::array<cplx, 4> c{};
    for (std::size_t i = 0; i < 4; ++i) c[i] = detail::parse_coefficient(parts[i].first, parts[i].second);
    return MoebiusMap(c[0], c[1], c[2], c[3]);
}

inline std::string format_map(const MoebiusMap& f) {
    return format_complex(f.a()) + "," + format_complex(f.b()) + "," + format_complex(f.c()) + "," +
           format_complex(f.d());
}

}  // namespace moebius
