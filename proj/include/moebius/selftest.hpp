#pragma once

// Cross-module property harness run by `moebius selftest`: criterion
// agreement, the Moebius/operator bridge and conjugator round trips on a
// seeded ensemble of map pairs.

#include <string>
#include <vector>

#include "moebius/sampling.hpp"
#include "moebius/topo_decision.hpp"

namespace moebius {

struct Counterexample {
    std::size_t index = 0;
    std::string property;
    MoebiusMap f;
    MoebiusMap g;
    std::string detail;
};

struct SelftestReport {
    std::uint64_t seed = 0;
    std::size_t pairs = 0;
    std::size_t decided = 0;
    std::size_t conjugate_verdicts = 0;
    std::size_t indeterminate = 0;
    std::size_t conjugators_found = 0;
    std::size_t boundary_pairs = 0;
    std::vector<Counterexample> failures;

    bool ok() const { return failures.empty(); }
};

/// Largest chordal residual of g = h^-1 o f o h over `samples` random points.
inline double conjugation_residual(const MoebiusMap& f, const MoebiusMap& g, const MoebiusMap& h,
                                   MapSampler& sampler, int samples = 20) {
    const MoebiusMap conj = conjugate_by(f, h);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const ExtendedComplex z = sampler.point();
        worst = std::max(worst, chordal_distance(apply(g, z), apply(conj, z)));
    }
    return worst;
}

/// Runs the ensemble. With `boundary`, every fifth pair starts from a map
/// whose eigenvalue modulus is 1 + k * 1e-10, straddling eps_unit; pairs
/// whose criteria then disagree are counted as indeterminate.
inline SelftestReport run_selftest(std::uint64_t seed, std::size_t count, const Tolerances& tol = {},
                                   bool boundary = false) {
    constexpr double kRoundTrip = 1e-7;
    constexpr double kOnThreshold = 1e-3;
    SelftestReport report;
    report.seed = seed;
    report.pairs = count;
    MapSampler sampler(seed);

    for (std::size_t i = 0; i < count; ++i) {
        auto [f, g] = sampler.pair();
        if (boundary && i % 5 == 0) {
            const double k = 1 + sampler.index(10);
            const cplx lam = std::polar(1.0 + k * 1e-10, sampler.uniform(0.1, 1.5));
            f = sampler.with_multiplier(lam * lam);
            ++report.boundary_pairs;
        }
        auto fail = [&](std::string property, std::string detail) {
            report.failures.push_back({i, std::move(property), f, g, std::move(detail)});
        };

        TopoDecision decision;
        try {
            decision = topo_conjugate(f, g, tol);
        } catch (const IndeterminateError&) {
            ++report.indeterminate;
            continue;
        }
        const BridgeDecision bridge = moebius_operator_bridge(f, g, tol);
        // A gated quantity sitting on its threshold can round to either side
        // in the two routes; that is the same boundary case as above.
        if (bridge.verdict() != decision.verdict && decision.margin < kOnThreshold * tol.eps_unit) {
            ++report.indeterminate;
            continue;
        }
        ++report.decided;
        if (decision.verdict) ++report.conjugate_verdicts;

        if (bridge.verdict() != decision.verdict)
            fail("operator bridge", "operator route says " + std::to_string(bridge.verdict()) +
                                        ", criteria say " + std::to_string(decision.verdict));

        if (const auto h = conjugator(f, g, tol)) {
            ++report.conjugators_found;
            const double res = conjugation_residual(f, g, *h, sampler);
            if (!(res <= kRoundTrip))
                fail("conjugator round trip", "chordal residual " + std::to_string(res) + " > 1e-7");
            if (!decision.verdict) fail("coarsening", "Moebius conjugate but judged not topologically conjugate");
        }
    }
    return report;
}

}  // namespace moebius
