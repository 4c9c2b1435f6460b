#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "scissor/force_engine.hpp"
#include "scissor/geometry_oracle.hpp"
#include "scissor/lift_model.hpp"
#include "scissor/sampling.hpp"

// Randomized cross-checks of the closed forms against the coordinate
// oracle. Each suite walks seeded samples, records the worst relative
// deviation and where it happened, and leaves pass/fail judgement to the
// caller's tolerance.

namespace scissor {

struct SuiteResult {
    double max_deviation = 0.0;
    ActuatorPlacement worst_placement{};
    double worst_theta = 0.0;
    double worst_theta2 = 0.0;  // energy suite only: upper end of the range
    int samples = 0;
};

/// Closed-form actuator length vs Euclidean oracle length, relative to the
/// closed form. Samples are rejected while the radicand is cancellation-
/// dominated (see sampling.hpp); that region has no meaningful relative
/// answer and is excluded from validity by the degeneracy threshold anyway.
inline SuiteResult length_equivalence_suite(const LiftSpec& lift, const ThetaDomain& dom,
                                            int samples, std::uint64_t seed) {
    lift.validate();
    dom.validate();
    require(samples >= 1, errc::invalid_spec, "samples: must be >= 1");
    SampleRng rng(seed);
    SuiteResult result;
    while (result.samples < samples) {
        const ActuatorPlacement p = sample_placement(rng, lift.stages);
        const double theta = sample_theta(rng, dom);
        if (!radicand_well_conditioned(p, theta)) continue;
        const double closed = actuator_length_unchecked(p, lift.arm_length, theta);
        if (closed < 1e-6 * lift.arm_length) continue;
        const double oracle = oracle_actuator_length(p, lift.arm_length, theta);
        const double deviation = std::abs(oracle - closed) / closed;
        if (deviation > result.max_deviation) {
            result.max_deviation = deviation;
            result.worst_placement = p;
            result.worst_theta = theta;
        }
        ++result.samples;
    }
    return result;
}

/// Closed-form dh/dl vs central finite difference of the oracle chain
/// h(theta), l(theta). Only samples with |denominator| above the stated
/// floor participate; at the floor the finite difference is still far above
/// its round-off noise for delta = 1e-6.
inline SuiteResult derivative_consistency_suite(const LiftSpec& lift, const ThetaDomain& dom,
                                                int samples, std::uint64_t seed,
                                                double delta = 1e-6,
                                                double denominator_floor = 1e-3) {
    lift.validate();
    dom.validate();
    require(samples >= 1, errc::invalid_spec, "samples: must be >= 1");
    const double margin = std::max(2.0 * delta, 0.05);
    require(dom.lo + margin < dom.hi - margin, errc::invalid_spec,
            "domain too narrow for the difference step");
    SampleRng rng(seed);
    SuiteResult result;
    while (result.samples < samples) {
        const ActuatorPlacement p = sample_placement(rng, lift.stages);
        const double theta = sample_theta(rng, dom, margin);
        if (!radicand_well_conditioned(p, theta)) continue;
        if (std::abs(velocity_denominator(p, theta)) <= denominator_floor) continue;
        const auto closed = velocity_ratio(p, lift.stages, theta, SingularityPolicy{});
        if (!closed) continue;
        const double fd = fd_velocity_ratio(p, lift.stages, lift.arm_length, theta, delta);
        const double deviation = std::abs(fd - *closed) / std::abs(*closed);
        if (deviation > result.max_deviation) {
            result.max_deviation = deviation;
            result.worst_placement = p;
            result.worst_theta = theta;
        }
        ++result.samples;
    }
    return result;
}

/// Work integral vs potential-energy gain over random sub-ranges. Ranges
/// that pass near a denominator zero are rejected: the residual identity
/// excludes singular-in-range by precondition, and the quadrature target
/// needs the force curve bounded away from its pole.
inline SuiteResult energy_identity_suite(const LiftSpec& lift, const ThetaDomain& dom,
                                         int cases, std::uint64_t seed, int steps = 10000,
                                         double denominator_margin = 0.2) {
    lift.validate();
    dom.validate();
    require(cases >= 1, errc::invalid_spec, "cases: must be >= 1");
    require(effective_load(lift) > 0.0, errc::undefined_residual,
            "effective load is zero: residual undefined");
    SampleRng rng(seed);
    SuiteResult result;
    while (result.samples < cases) {
        const ActuatorPlacement p = sample_placement(rng, lift.stages);
        const double width = rng.uniform(0.1, std::min(0.6, dom.hi - dom.lo));
        const double theta1 = rng.uniform(dom.lo, dom.hi - width);
        const double theta2 = theta1 + width;
        if (min_abs_denominator(p, theta1, theta2) < denominator_margin) continue;
        const double residual = energy_residual(lift, p, theta1, theta2, steps);
        if (residual > result.max_deviation) {
            result.max_deviation = residual;
            result.worst_placement = p;
            result.worst_theta = theta1;
            result.worst_theta2 = theta2;
        }
        ++result.samples;
    }
    return result;
}

struct VerifyTolerances {
    double length = 1e-12;
    double derivative = 1e-5;
    double energy = 1e-8;
};

struct VerifySummary {
    SuiteResult length;
    SuiteResult derivative;
    SuiteResult energy;
    VerifyTolerances tolerances;

    bool all_within() const {
        return length.max_deviation <= tolerances.length &&
               derivative.max_deviation <= tolerances.derivative &&
               energy.max_deviation <= tolerances.energy;
    }
};

/// Run all three suites with `trials` samples each, on streams derived from
/// one seed. Identical inputs give identical summaries.
inline VerifySummary run_verification(const LiftSpec& lift, const ThetaDomain& dom, int trials,
                                      std::uint64_t seed) {
    require(trials >= 1, errc::invalid_spec, "trials: must be >= 1");
    VerifySummary summary;
    summary.length = length_equivalence_suite(lift, dom, trials, seed);
    summary.derivative =
        derivative_consistency_suite(lift, dom, trials, seed + 0x9e3779b97f4a7c15ull);
    summary.energy = energy_identity_suite(lift, dom, trials, seed + 0x3c6ef372fe94f82aull);
    return summary;
}

}  // namespace scissor
