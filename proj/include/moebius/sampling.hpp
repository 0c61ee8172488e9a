#pragma once

// Seeded random Moebius maps of prescribed type, for property suites.

#include <numbers>
#include <random>
#include <utility>

#include "moebius/spectral_classify.hpp"

namespace moebius {

/// Draws maps whose gated quantities (distance of |lambda| to 1, distance of
/// traces to +-2, ...) are either exact by construction or at least ~1e-2
/// away from their thresholds.
class MapSampler {
public:
    explicit MapSampler(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& engine() { return rng_; }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    cplx complex_in_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }
    ExtendedComplex point(double r = 3.0) { return complex_in_box(r); }

    /// Random coefficients in [-2, 2]^2, |ad - bc| bounded away from zero.
    MoebiusMap generic() {
        while (true) {
            const Mat2 m{complex_in_box(2.0), complex_in_box(2.0), complex_in_box(2.0), complex_in_box(2.0)};
            if (std::abs(m.det()) > 0.1 * m.max_abs() * m.max_abs()) return MoebiusMap(m);
        }
    }

    /// A map whose unimodular matrix has Frobenius norm^2 <= 8, so that
    /// conjugating by it loses little precision.
    MoebiusMap well_conditioned() {
        while (true) {
            const MoebiusMap h = generic();
            const Mat2 m = normalize(h).matrix();
            double fro = 0.0;
            for (const cplx& e : m.entries()) fro += std::norm(e);
            if (fro <= 8.0) return h;
        }
    }

    ConjClass nonidentity_class() {
        constexpr ConjClass kinds[] = {ConjClass::Parabolic, ConjClass::Elliptic, ConjClass::Hyperbolic,
                                       ConjClass::Loxodromic};
        return kinds[index(4)];
    }

    /// Multiplier of a map of the given (two-fixed-point) class.
    cplx multiplier(ConjClass c) {
        using std::numbers::pi;
        const double r = coin() ? uniform(1.1, 8.0) : 1.0 / uniform(1.1, 8.0);
        const double sign = coin() ? 1.0 : -1.0;
        switch (c) {
            case ConjClass::Hyperbolic: return sign * r;
            case ConjClass::Loxodromic: return std::polar(r, sign * uniform(0.05, pi - 0.05));
            case ConjClass::Elliptic: return std::polar(1.0, sign * uniform(0.05, pi));
            default: throw InvalidArgumentError("class has no multiplier of the form mu z");
        }
    }

    /// h^-1 o (mu z) o h for a random well-conditioned h.
    MoebiusMap with_multiplier(cplx mu) { return conjugate_by(MoebiusMap::scaling(mu), well_conditioned()); }

    MoebiusMap parabolic() {
        cplx t = complex_in_box(2.0);
        while (std::abs(t) < 0.2) t = complex_in_box(2.0);
        return conjugate_by(MoebiusMap::translation(t), well_conditioned());
    }

    MoebiusMap of_class(ConjClass c) {
        if (c == ConjClass::Identity) return MoebiusMap::identity();
        if (c == ConjClass::Parabolic) return parabolic();
        return with_multiplier(multiplier(c));
    }

    MoebiusMap nonidentity() { return of_class(nonidentity_class()); }

    /// A pair (f, g) mixing conjugate, topologically conjugate and
    /// non-conjugate cases in roughly balanced proportions.
    std::pair<MoebiusMap, MoebiusMap> pair() {
        const double r = uniform(0.0, 1.0);
        if (r < 0.25) {
            const MoebiusMap f = nonidentity();
            return {f, conjugate_by(f, well_conditioned())};
        }
        if (r < 0.40) {
            const cplx mu = multiplier(ConjClass::Elliptic);
            const cplx nu = coin() ? std::conj(mu) : 1.0 / mu;
            return {with_multiplier(mu), with_multiplier(nu)};
        }
        if (r < 0.50) return {of_class(ConjClass::Elliptic), of_class(ConjClass::Elliptic)};
        return {nonidentity(), nonidentity()};
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace moebius
