#pragma once

// Spectral data of a Moebius map (trace, eigenvalues, fixed points,
// multipliers, Jordan form), the four-way classification, canonical forms
// under Moebius conjugacy, and an explicit Moebius conjugator.

#include <optional>
#include <string_view>
#include <vector>

#include "moebius/moebius_map.hpp"

namespace moebius {

enum class ConjClass { Identity, Parabolic, Elliptic, Hyperbolic, Loxodromic };

inline std::string_view to_string(ConjClass c) {
    switch (c) {
        case ConjClass::Identity: return "Identity";
        case ConjClass::Parabolic: return "Parabolic";
        case ConjClass::Elliptic: return "Elliptic";
        case ConjClass::Hyperbolic: return "Hyperbolic";
        case ConjClass::Loxodromic: return "Loxodromic";
    }
    return "?";
}

/// Eigenvalues {lambda, 1/lambda} of a determinant-one matrix. `first` is
/// the one whose square is the preferred multiplier (see prefer_multiplier).
struct EigenPair {
    cplx first;
    cplx second;
};

/// Fixed points of a nonidentity map: two, or one for parabolic maps.
struct FixedPointSet {
    std::vector<ExtendedComplex> points;
    std::size_t count() const { return points.size(); }
};

/// The unordered pair {mu, 1/mu}; {1} for parabolic maps.
struct MultiplierPair {
    cplx first;
    cplx second;
    bool parabolic = false;
};

struct JordanForm {
    /// diag(lambda, 1/lambda), or [[s, 1], [0, s]] with s = +-1.
    Mat2 canonical;
    /// T with T^-1 M T = canonical and det T = 1.
    Mat2 transform;
    bool diagonal = true;
};

/// Whether mu is preferred over 1/mu as the representative multiplier:
/// |mu| > 1, or on the unit circle Im mu >= 0.
inline bool prefer_multiplier(cplx mu, const Tolerances& tol = {}) {
    if (is_unit_modulus(mu, tol)) return mu.imag() >= 0.0 || std::abs(mu.imag()) <= tol.equality;
    return std::abs(mu) > 1.0;
}

inline cplx trace_of(const MoebiusMap& f) { return normalize(f).trace(); }

/// min(|t - 2|, |t + 2|) <= eps_unit
inline bool is_parabolic_trace(cplx t, const Tolerances& tol = {}, Margin* margin = nullptr) {
    const double dist = std::min(std::abs(t - 2.0), std::abs(t + 2.0));
    if (margin) margin->note(dist, tol.eps_unit);
    return dist <= tol.eps_unit;
}

namespace detail {

inline void require_nonidentity(const MoebiusMap& f) {
    if (is_identity(f)) throw IdentityMapError();
}

// Root of lambda^2 - t lambda + 1 with the larger modulus, without cancellation.
inline cplx dominant_root(cplx t) {
    const cplx s = std::sqrt(t * t - 4.0);
    const cplx plus = t + s, minus = t - s;
    return (std::abs(plus) >= std::abs(minus) ? plus : minus) / 2.0;
}

// Eigenvector of m for eigenvalue lam, scaled so its largest component is 1.
inline std::array<cplx, 2> eigenvector(const Mat2& m, cplx lam) {
    std::array<cplx, 2> u{m.m12, lam - m.m11};
    std::array<cplx, 2> v{lam - m.m22, m.m21};
    const double nu = std::max(std::abs(u[0]), std::abs(u[1]));
    const double nv = std::max(std::abs(v[0]), std::abs(v[1]));
    std::array<cplx, 2> w = nu >= nv ? u : v;
    const cplx pivot = std::abs(w[0]) >= std::abs(w[1]) ? w[0] : w[1];
    return {w[0] / pivot, w[1] / pivot};
}

inline Mat2 unit_det(const Mat2& t) { return (1.0 / principal_sqrt(t.det())) * t; }

// T with T^-1 m T = diag(lam, 1/lam); requires distinct eigenvalues.
inline Mat2 diagonalizer(const Mat2& m, cplx lam) {
    const auto v1 = eigenvector(m, lam);
    const auto v2 = eigenvector(m, 1.0 / lam);
    return unit_det(Mat2{v1[0], v2[0], v1[1], v2[1]});
}

// T with T^-1 m T = [[s, 1], [0, s]] for a non-scalar m with trace near 2s.
inline Mat2 jordan_block_transform(const Mat2& m, double s) {
    const Mat2 n = m - s * Mat2::identity();
    const double col1 = std::max(std::abs(n.m11), std::abs(n.m21));
    const double col2 = std::max(std::abs(n.m12), std::abs(n.m22));
    // Columns are (N v2, v2) with v2 a standard basis vector not in ker N.
    if (col2 >= col1) return unit_det(Mat2{n.m12, 0.0, n.m22, 1.0});
    return unit_det(Mat2{n.m11, 1.0, n.m21, 0.0});
}

inline double parabolic_sign(cplx t) { return std::abs(t - 2.0) <= std::abs(t + 2.0) ? 1.0 : -1.0; }

inline ExtendedComplex finite_or_infinity(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return ExtendedComplex::infinity();
    return z;
}

}  // namespace detail

/// Roots of lambda^2 - tr(M) lambda + 1.
inline EigenPair eigenvalues(const Mat2& m, const Tolerances& tol = {}) {
    // Inside the parabolic gate the root pair is merged, matching multipliers().
    if (is_parabolic_trace(m.trace(), tol)) {
        const double s = detail::parabolic_sign(m.trace());
        return {s, s};
    }
    cplx lam = detail::dominant_root(m.trace());
    if (!prefer_multiplier(lam * lam, tol)) lam = 1.0 / lam;
    return {lam, 1.0 / lam};
}

inline EigenPair eigenvalues(const UnimodularMatrix& m, const Tolerances& tol = {}) {
    return eigenvalues(m.matrix(), tol);
}

/// Solutions of c z^2 + (d - a) z - b = 0 on the extended plane.
inline FixedPointSet fixed_points(const MoebiusMap& f, const Tolerances& tol = {}) {
    detail::require_nonidentity(f);
    const Mat2 m = normalize(f).matrix();
    const cplx qa = m.m21, qb = m.m22 - m.m11, qc = -m.m12;
    if (is_parabolic_trace(m.trace(), tol)) {
        // Double root -qb / (2 qa); at infinity when c vanishes.
        if (qa == cplx{}) return {{ExtendedComplex::infinity()}};
        return {{detail::finite_or_infinity(-qb / (2.0 * qa))}};
    }
    // Roots q/qa and qc/q; q is the larger of -(qb +- s)/2, so neither
    // formula cancels, and qa = 0 sends the first root to infinity.
    const cplx s = std::sqrt(qb * qb - 4.0 * qa * qc);
    const cplx plus = qb + s, minus = qb - s;
    const cplx q = -(std::abs(plus) >= std::abs(minus) ? plus : minus) / 2.0;
    const ExtendedComplex z1 = qa == cplx{} ? ExtendedComplex::infinity() : detail::finite_or_infinity(q / qa);
    const ExtendedComplex z2 = detail::finite_or_infinity(qc / q);
    return {{z1, z2}};
}

/// Derivative at a fixed point; at infinity the limit of 1/f'(z).
///
/// Uses the unimodular representative, for which f'(z) = 1/(cz+d)^2.
inline cplx multiplier_at(const MoebiusMap& f, const ExtendedComplex& z) {
    const Mat2 m = normalize(f).matrix();
    if (z.is_infinity()) {
        if (m.m21 != cplx{}) throw InvalidArgumentError("infinity is not a fixed point of this map");
        return m.m22 * m.m22;
    }
    const cplx den = m.m21 * z.value() + m.m22;
    return 1.0 / (den * den);
}

inline MultiplierPair multipliers(const MoebiusMap& f, const Tolerances& tol = {}) {
    detail::require_nonidentity(f);
    if (is_parabolic_trace(trace_of(f), tol)) return {1.0, 1.0, true};
    const FixedPointSet fp = fixed_points(f, tol);
    cplx mu1 = multiplier_at(f, fp.points[0]);
    cplx mu2 = multiplier_at(f, fp.points[1]);
    if (!prefer_multiplier(mu1, tol) && prefer_multiplier(mu2, tol)) std::swap(mu1, mu2);
    return {mu1, mu2, false};
}

inline JordanForm jordan_form(const Mat2& m, const Tolerances& tol = {}) {
    const cplx t = m.trace();
    if (is_parabolic_trace(t, tol)) {
        const double s = detail::parabolic_sign(t);
        if (max_entry_distance(m, s * Mat2::identity()) <= tol.equality)
            return {Mat2{s, 0.0, 0.0, s}, Mat2::identity(), true};
        return {Mat2{s, 1.0, 0.0, s}, detail::jordan_block_transform(m, s), false};
    }
    const EigenPair ev = eigenvalues(m, tol);
    return {Mat2{ev.first, 0.0, 0.0, ev.second}, detail::diagonalizer(m, ev.first), true};
}

inline JordanForm jordan_form(const UnimodularMatrix& m, const Tolerances& tol = {}) {
    return jordan_form(m.matrix(), tol);
}

inline ConjClass classify(const MoebiusMap& f, const Tolerances& tol = {}) {
    if (is_identity(f)) return ConjClass::Identity;
    if (is_parabolic_trace(trace_of(f), tol)) return ConjClass::Parabolic;
    const cplx mu = multipliers(f, tol).first;
    // Unit modulus takes precedence, so mu = -1 is elliptic.
    if (is_unit_modulus(mu, tol)) return ConjClass::Elliptic;
    if (std::abs(mu.imag()) <= tol.eps_unit * std::abs(mu)) return ConjClass::Hyperbolic;
    return ConjClass::Loxodromic;
}

/// z -> mu z with the preferred multiplier, or z -> z + 1.
inline MoebiusMap canonical_conjugacy_form(const MoebiusMap& f, const Tolerances& tol = {}) {
    const MultiplierPair mp = multipliers(f, tol);
    if (mp.parabolic) return MoebiusMap::translation(1.0);
    return MoebiusMap::scaling(mp.first);
}

namespace detail {

// s with s^-1 f s = z + 1.
inline Mat2 parabolic_normalizer(const Mat2& m) {
    const double s = parabolic_sign(m.trace());
    // T^-1 M T = [[s, 1], [0, s]] is z -> z + s; rescaling the second basis
    // vector by s turns it into z -> z + 1.
    const Mat2 t = jordan_block_transform(m, s);
    return unit_det(t * Mat2{1.0, 0.0, 0.0, s});
}

}  // namespace detail

/// A Moebius h with g = h^-1 o f o h, when one exists.
///
/// Exists iff tr M_f = +-tr M_g. Both maps are carried to the same canonical
/// form and the two normalizing maps are chained; for maps with two fixed
/// points the eigenvalue of g is chosen so that multipliers line up.
inline std::optional<MoebiusMap> conjugator(const MoebiusMap& f, const MoebiusMap& g,
                                            const Tolerances& tol = {}) {
    detail::require_nonidentity(f);
    detail::require_nonidentity(g);
    const Mat2 mf = normalize(f).matrix();
    const Mat2 mg = normalize(g).matrix();
    const cplx tf = mf.trace(), tg = mg.trace();
    if (!approx_equal(tf, tg, tol.equality) && !approx_equal(tf, -tg, tol.equality)) return std::nullopt;

    const bool pf = is_parabolic_trace(tf, tol);
    const bool pg = is_parabolic_trace(tg, tol);
    if (pf != pg) return std::nullopt;
    if (pf) {
        const Mat2 sf = detail::parabolic_normalizer(mf);
        const Mat2 sg = detail::parabolic_normalizer(mg);
        return MoebiusMap(sf * sg.adjugate());
    }
    const cplx lf = eigenvalues(mf, tol).first;
    const EigenPair eg = eigenvalues(mg, tol);
    const cplx target = lf * lf;
    const cplx lg = std::abs(eg.first * eg.first - target) <= std::abs(eg.second * eg.second - target)
                        ? eg.first
                        : eg.second;
    const Mat2 sf = detail::diagonalizer(mf, lf);
    const Mat2 sg = detail::diagonalizer(mg, lg);
    return MoebiusMap(sf * sg.adjugate());
}

}  // namespace moebius
