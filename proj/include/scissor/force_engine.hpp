#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "scissor/error.hpp"
#include "scissor/lift_model.hpp"

namespace scissor {

/// Thresholds below which a result is declared singular rather than
/// evaluated: eps_denominator for the velocity-ratio denominator
/// (dimensionless), eps_length for the actuator length (meters).
struct SingularityPolicy {
    double eps_denominator = 1e-9;
    double eps_length = 1e-9;

    static SingularityPolicy for_arm(double arm_length) {
        return SingularityPolicy{1e-9, 1e-9 * arm_length};
    }

    void validate() const {
        require(eps_denominator > 0.0 && eps_length > 0.0, errc::invalid_spec,
                "singularity policy: thresholds must be > 0");
    }
};

/// Radicand of the squared-length expression, (l/D)^2 as a polynomial in
/// cos(theta). Case 1: K_A c^2 - 2 K_B c + K_C. Case 2: K_C - 2ab c - K_D c^2.
/// Always >= 0 in exact arithmetic (each equals a sum of two squares).
inline double length_radicand(const ActuatorPlacement& p, double cos_theta) {
    const PlacementConstants k = lift_constants(p);
    const double c = cos_theta;
    if (p.slope == ArmSlope::negative) {
        return k.k_a * c * c - 2.0 * k.k_b * c + k.k_c;
    }
    const double ab = p.arm_fraction * p.anchor_offset;
    return k.k_c - 2.0 * ab * c - k.k_d * c * c;
}

/// Sum of the magnitudes of the radicand's terms; the ratio radicand /
/// magnitude measures how much cancellation the closed form suffered.
inline double length_radicand_magnitude(const ActuatorPlacement& p, double cos_theta) {
    const PlacementConstants k = lift_constants(p);
    const double c = cos_theta;
    if (p.slope == ArmSlope::negative) {
        return std::abs(k.k_a) * c * c + 2.0 * std::abs(k.k_b) * c + k.k_c;
    }
    const double ab = p.arm_fraction * p.anchor_offset;
    return k.k_c + 2.0 * std::abs(ab) * c + k.k_d * c * c;
}

/// Denominator of dh/dl. Case 1: K_B tan(theta) - K_A sin(theta).
/// Case 2: ab tan(theta) + K_D sin(theta). Its zeros are the angles where
/// the actuator length is stationary and no finite force answer exists.
inline double velocity_denominator(const ActuatorPlacement& p, double theta) {
    const PlacementConstants k = lift_constants(p);
    if (p.slope == ArmSlope::negative) {
        return k.k_b * std::tan(theta) - k.k_a * std::sin(theta);
    }
    const double ab = p.arm_fraction * p.anchor_offset;
    return ab * std::tan(theta) + k.k_d * std::sin(theta);
}

namespace detail {

inline double checked_radicand(const ActuatorPlacement& p, double theta) {
    const double r = length_radicand(p, std::cos(theta));
    // Anything measurably below zero means the inputs broke an invariant
    // upstream; tiny negatives are round-off and are clamped.
    const double tol = 1e-12 * (1.0 + length_radicand_magnitude(p, std::cos(theta)));
    require(r >= -tol, errc::inconsistent_geometry,
            "length radicand negative: impossible geometry");
    return r < 0.0 ? 0.0 : r;
}

}  // namespace detail

/// Actuator length without the degeneracy threshold; used where a
/// zero-length result is data rather than an error.
inline double actuator_length_unchecked(const ActuatorPlacement& p, double arm_length,
                                        double theta) {
    p.validate();
    require(std::isfinite(arm_length) && arm_length > 0.0, errc::invalid_spec,
            "arm_length: must be finite and > 0");
    check_theta(theta);
    return arm_length * std::sqrt(detail::checked_radicand(p, theta));
}

/// Closed-form actuator length l = D sqrt(radicand). A result under
/// eps_length means P essentially coincides with Q (e.g. b = cos(theta)
/// with a = i = 0); that zero-length geometry is rejected, not continued.
inline double actuator_length(const ActuatorPlacement& p, double arm_length, double theta,
                              const SingularityPolicy& policy) {
    policy.validate();
    const double l = actuator_length_unchecked(p, arm_length, theta);
    require(l >= policy.eps_length, errc::degenerate_placement,
            "degenerate placement: actuator length below threshold");
    return l;
}

inline double actuator_length(const ActuatorPlacement& p, double arm_length, double theta) {
    return actuator_length(p, arm_length, theta, SingularityPolicy::for_arm(arm_length));
}

/// Instantaneous dh/dl. Signed: a negative value means retracting the
/// actuator raises the lift. Returns nullopt when the denominator is within
/// eps_denominator of zero; never NaN or infinity.
inline std::optional<double> velocity_ratio(const ActuatorPlacement& p, int stages, double theta,
                                            const SingularityPolicy& policy) {
    p.validate();
    require(stages >= 1, errc::invalid_spec, "stages: must be >= 1");
    policy.validate();
    check_theta(theta);
    const double numerator = std::sqrt(detail::checked_radicand(p, theta));
    const double denominator = velocity_denominator(p, theta);
    if (std::abs(denominator) <= policy.eps_denominator) return std::nullopt;
    return static_cast<double>(stages) * numerator / denominator;
}

inline std::optional<double> velocity_ratio(const ActuatorPlacement& p, int stages,
                                            double theta) {
    return velocity_ratio(p, stages, theta, SingularityPolicy{});
}

/// Actuator force F = L_E dh/dl. Singularity propagates as nullopt.
inline std::optional<double> force(const LiftSpec& lift, const ActuatorPlacement& p, double theta,
                                   const SingularityPolicy& policy) {
    lift.validate();
    p.validate_against(lift);
    const auto ratio = velocity_ratio(p, lift.stages, theta, policy);
    if (!ratio) return std::nullopt;
    return effective_load(lift) * *ratio;
}

inline std::optional<double> force(const LiftSpec& lift, const ActuatorPlacement& p,
                                   double theta) {
    return force(lift, p, theta, SingularityPolicy::for_arm(lift.arm_length));
}

/// One evaluated operating point. When dh_dl/force are empty the point is
/// singular and they must never be rendered as numbers.
struct AnalysisRow {
    double theta;            // radians
    double height;           // m
    double actuator_length;  // m
    std::optional<double> dh_dl;
    std::optional<double> force;

    bool singular() const { return !dh_dl.has_value(); }
};

inline AnalysisRow analyze_at(const LiftSpec& lift, const ActuatorPlacement& p, double theta,
                              const SingularityPolicy& policy) {
    lift.validate();
    p.validate_against(lift);
    AnalysisRow row{};
    row.theta = theta;
    row.height = height(lift, theta);
    row.actuator_length = actuator_length(p, lift.arm_length, theta, policy);
    row.dh_dl = velocity_ratio(p, lift.stages, theta, policy);
    row.force = row.dh_dl ? std::optional<double>(effective_load(lift) * *row.dh_dl)
                          : std::nullopt;
    return row;
}

inline AnalysisRow analyze_at(const LiftSpec& lift, const ActuatorPlacement& p, double theta) {
    return analyze_at(lift, p, theta, SingularityPolicy::for_arm(lift.arm_length));
}

/// Uniform closed grid over [lo, hi]: index 0 and count-1 land exactly on
/// the endpoints.
inline double grid_theta(const ThetaDomain& dom, int index, int count) {
    if (count == 1) return dom.lo;
    const double t = static_cast<double>(index) / static_cast<double>(count - 1);
    return dom.lo + (dom.hi - dom.lo) * t;
}

/// Min and max actuator length over a uniform theta grid; l(theta) need not
/// be monotone, so both extremes are searched.
inline std::pair<double, double> stroke_range(const ActuatorPlacement& p, double arm_length,
                                              const ThetaDomain& dom, int samples,
                                              const SingularityPolicy& policy) {
    dom.validate();
    require(samples >= 2, errc::invalid_spec, "samples: must be >= 2");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double l = actuator_length(p, arm_length, grid_theta(dom, k, samples), policy);
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    return {lo, hi};
}

inline std::pair<double, double> stroke_range(const ActuatorPlacement& p, double arm_length,
                                              const ThetaDomain& dom, int samples) {
    return stroke_range(p, arm_length, dom, samples, SingularityPolicy::for_arm(arm_length));
}

/// Largest force over a uniform theta grid, ties broken toward the smallest
/// theta. Any singular sample poisons the whole range.
inline std::pair<double, double> peak_force(const LiftSpec& lift, const ActuatorPlacement& p,
                                            const ThetaDomain& dom, int samples,
                                            const SingularityPolicy& policy) {
    dom.validate();
    require(samples >= 2, errc::invalid_spec, "samples: must be >= 2");
    double best_theta = 0.0;
    double best_force = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double theta = grid_theta(dom, k, samples);
        const auto f = force(lift, p, theta, policy);
        require(f.has_value(), errc::singular_range,
                "singular sample in range at theta = " + std::to_string(to_degrees(theta)) +
                    " deg");
        if (*f > best_force) {
            best_force = *f;
            best_theta = theta;
        }
    }
    return {best_theta, best_force};
}

}  // namespace scissor
