#pragma once

// Topological conjugacy of Moebius maps. Three independent routes decide it:
//
//   trace:      tr M_f, tr M_g both outside [-2, 2], or tr M_f = +-tr M_g;
//   eigen:      for all eigenvalues l of M_f and l' of M_g:
//               |l|, |l'| != 1, or l = +-l', or l = +-conj(l');
//   multiplier: for all multipliers mu of f and nu of g:
//               |mu|, |nu| != 1, or mu = nu, or mu = conj(nu).
//
// They are equivalent for nonidentity maps; topo_conjugate() evaluates all
// three and refuses to answer when they disagree.

#include <array>
#include <string>
#include <vector>

#include "moebius/operator_topology.hpp"
#include "moebius/spectral_classify.hpp"

namespace moebius {

struct TopoDecision {
    bool verdict = false;
    bool by_trace = false;
    bool by_eigen = false;
    bool by_multiplier = false;
    /// Smallest distance of an eps_unit-gated quantity to its threshold.
    double margin = 0.0;
    std::vector<std::string> notes;
};

/// Raised when the three criteria disagree, which only happens for inputs
/// sitting on an eps_unit boundary.
class IndeterminateError : public Error {
public:
    IndeterminateError(bool trace, bool eigen, bool multiplier, double margin)
        : Error("criteria disagree (trace=" + std::to_string(trace) + ", eigen=" + std::to_string(eigen) +
                ", multiplier=" + std::to_string(multiplier) + "); adjust eps_unit"),
          trace_(trace), eigen_(eigen), multiplier_(multiplier), margin_(margin) {}

    bool by_trace() const noexcept { return trace_; }
    bool by_eigen() const noexcept { return eigen_; }
    bool by_multiplier() const noexcept { return multiplier_; }
    double margin() const noexcept { return margin_; }

private:
    bool trace_, eigen_, multiplier_;
    double margin_;
};

inline bool criterion_trace(const MoebiusMap& f, const MoebiusMap& g, const Tolerances& tol = {},
                            Margin* margin = nullptr) {
    detail::require_nonidentity(f);
    detail::require_nonidentity(g);
    const cplx tf = trace_of(f), tg = trace_of(g);
    const bool f_in = in_trace_interval(tf, tol, margin);
    const bool g_in = in_trace_interval(tg, tol, margin);
    if (!f_in && !g_in) return true;
    return approx_equal(tf, tg, tol.equality) || approx_equal(tf, -tg, tol.equality);
}

inline bool criterion_eigen(const MoebiusMap& f, const MoebiusMap& g, const Tolerances& tol = {},
                            Margin* margin = nullptr) {
    detail::require_nonidentity(f);
    detail::require_nonidentity(g);
    const EigenPair ef = eigenvalues(normalize(f), tol);
    const EigenPair eg = eigenvalues(normalize(g), tol);
    bool all = true;
    for (const cplx& l : {ef.first, ef.second}) {
        for (const cplx& lp : {eg.first, eg.second}) {
            const bool off_circle = !is_unit_modulus(l, tol, margin) && !is_unit_modulus(lp, tol, margin);
            const double e = tol.equality;
            const bool related = approx_equal(l, lp, e) || approx_equal(l, -lp, e) ||
                                 approx_equal(l, std::conj(lp), e) || approx_equal(l, -std::conj(lp), e);
            all = all && (off_circle || related);
        }
    }
    return all;
}

inline bool criterion_multiplier(const MoebiusMap& f, const MoebiusMap& g, const Tolerances& tol = {},
                                 Margin* margin = nullptr) {
    const MultiplierPair mf = multipliers(f, tol);
    const MultiplierPair mg = multipliers(g, tol);
    if (margin) {
        is_parabolic_trace(trace_of(f), tol, margin);
        is_parabolic_trace(trace_of(g), tol, margin);
    }
    bool all = true;
    for (const cplx& mu : {mf.first, mf.second}) {
        for (const cplx& nu : {mg.first, mg.second}) {
            const bool off_circle = !is_unit_modulus(mu, tol, margin) && !is_unit_modulus(nu, tol, margin);
            const bool related = approx_equal(mu, nu, tol.equality) || approx_equal(mu, std::conj(nu), tol.equality);
            all = all && (off_circle || related);
        }
    }
    return all;
}

inline TopoDecision topo_conjugate(const MoebiusMap& f, const MoebiusMap& g, const Tolerances& tol = {}) {
    TopoDecision d;
    const bool fid = is_identity(f), gid = is_identity(g);
    if (fid || gid) {
        d.verdict = d.by_trace = d.by_eigen = d.by_multiplier = (fid && gid);
        d.margin = std::numeric_limits<double>::infinity();
        d.notes.emplace_back(fid && gid ? "both maps are the identity"
                                        : "exactly one map is the identity; the identity is conjugate only to itself");
        return d;
    }
    Margin margin;
    d.by_trace = criterion_trace(f, g, tol, &margin);
    d.by_eigen = criterion_eigen(f, g, tol, &margin);
    d.by_multiplier = criterion_multiplier(f, g, tol, &margin);
    d.margin = margin.value();
    if (d.by_trace != d.by_eigen || d.by_eigen != d.by_multiplier)
        throw IndeterminateError(d.by_trace, d.by_eigen, d.by_multiplier, d.margin);
    d.verdict = d.by_trace;
    const ConjClass cf = classify(f, tol), cg = classify(g, tol);
    d.notes.push_back("f is " + std::string(to_string(cf)) + ", g is " + std::string(to_string(cg)));
    return d;
}

/// 2z for hyperbolic and loxodromic maps, mu z with |mu| = 1 and Im mu >= 0
/// for elliptic maps, z + 1 for parabolic maps.
inline MoebiusMap topo_canonical_form(const MoebiusMap& f, const Tolerances& tol = {}) {
    switch (classify(f, tol)) {
        case ConjClass::Identity: throw IdentityMapError();
        case ConjClass::Parabolic: return MoebiusMap::translation(1.0);
        case ConjClass::Hyperbolic:
        case ConjClass::Loxodromic: return MoebiusMap::scaling(2.0);
        case ConjClass::Elliptic: {
            const MultiplierPair mp = multipliers(f, tol);
            const cplx mu = mp.first.imag() >= 0.0 ? mp.first : mp.second;
            return MoebiusMap::scaling(mu);
        }
    }
    throw IdentityMapError();
}

/// Outcome of the scaling-map test, with the route that decided it.
struct ScalingDecision {
    bool verdict = false;
    /// True when b had to be replaced by 1/b (conjugation by z -> 1/z) to
    /// bring both coefficients on the same side of the unit circle.
    bool used_inversion = false;
};

/// z -> az vs z -> bz: conjugate iff |a|, |b| != 1, or a = b, or a = conj(b).
///
/// Follows the two-step argument: the linear maps z -> az and z -> bz on C
/// are compared as operators; if they fail only because a and b lie on
/// opposite sides of the unit circle, b is replaced by 1/b, which the
/// homeomorphism z -> 1/z of the sphere allows.
inline ScalingDecision scaling_topo_decision(cplx a, cplx b, const Tolerances& tol = {}) {
    auto excluded = [&tol](cplx x) { return std::abs(x) <= tol.equality || approx_equal(x, 1.0, tol.equality); };
    if (excluded(a) || excluded(b)) throw InvalidArgumentError("scaling coefficients must avoid 0 and 1");
    auto linear = [&tol](cplx x, cplx y) {
        return topo_conjugate_complex(OperatorMatrix(1, {x}), OperatorMatrix(1, {y}), tol);
    };
    if (linear(a, b)) return {true, false};
    const bool ua = is_unit_modulus(a, tol), ub = is_unit_modulus(b, tol);
    if (!ua && !ub && linear(a, 1.0 / b)) return {true, true};
    return {false, false};
}

inline bool scaling_topo_conjugate(cplx a, cplx b, const Tolerances& tol = {}) {
    return scaling_topo_decision(a, b, tol).verdict;
}

}  // namespace moebius
