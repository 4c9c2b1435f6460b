#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "scissor/error.hpp"
#include "scissor/force_engine.hpp"
#include "scissor/lift_model.hpp"

// Brute-force coordinate-geometry route: explicit hinge coordinates,
// Euclidean actuator length, central-difference velocity ratio, and an
// energy-balance quadrature. Everything here re-derives what force_engine
// computes in closed form, through an independent path, so the two can be
// checked against each other.

namespace scissor {

struct Vec2 {
    double x;
    double y;
};

inline double distance(Vec2 p, Vec2 q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}

/// Every joint of the lift at one opening angle. The static column sits at
/// x = 0, the mobile column at x = D cos(theta); hinge k of either column is
/// at height k D sin(theta), and the central pivots sit midway.
struct JointSet {
    std::vector<Vec2> static_hinges;  // n + 1, x = 0
    std::vector<Vec2> mobile_hinges;  // n + 1, x = D cos(theta)
    std::vector<Vec2> pivots;         // n
};

inline JointSet hinge_coordinates(int stages, double arm_length, double theta) {
    require(stages >= 1, errc::invalid_spec, "stages: must be >= 1");
    require(std::isfinite(arm_length) && arm_length > 0.0, errc::invalid_spec,
            "arm_length: must be finite and > 0");
    check_theta(theta);
    const double dx = arm_length * std::cos(theta);
    const double dy = arm_length * std::sin(theta);
    JointSet joints;
    joints.static_hinges.reserve(stages + 1);
    joints.mobile_hinges.reserve(stages + 1);
    joints.pivots.reserve(stages);
    for (int k = 0; k <= stages; ++k) {
        joints.static_hinges.push_back({0.0, k * dy});
        joints.mobile_hinges.push_back({dx, k * dy});
    }
    for (int k = 0; k < stages; ++k) {
        joints.pivots.push_back({0.5 * dx, (k + 0.5) * dy});
    }
    return joints;
}

/// Coordinates of the force-application point Q. A negatively sloping arm of
/// level i+1 runs from the mobile hinge at level i up to the static hinge at
/// level i+1; Q sits the fraction a along it. A positively sloping arm runs
/// from the static hinge up to the mobile one.
inline Vec2 point_of_application(const ActuatorPlacement& p, double arm_length, double theta) {
    p.validate();
    check_theta(theta);
    const double a = p.arm_fraction;
    const double y = (p.levels_below + a) * arm_length * std::sin(theta);
    if (p.slope == ArmSlope::negative) {
        return {(1.0 - a) * arm_length * std::cos(theta), y};
    }
    return {a * arm_length * std::cos(theta), y};
}

/// Euclidean actuator length: distance from the ground anchor P = (bD, 0)
/// to Q. Independent re-derivation of the closed-form length.
inline double oracle_actuator_length(const ActuatorPlacement& p, double arm_length,
                                     double theta) {
    const Vec2 q = point_of_application(p, arm_length, theta);
    return distance({p.anchor_offset * arm_length, 0.0}, q);
}

/// Central-difference dh/dl through the chain h(theta), l(theta), with l
/// taken from the Euclidean oracle.
inline double fd_velocity_ratio(const ActuatorPlacement& p, int stages, double arm_length,
                                double theta, double delta) {
    require(std::isfinite(delta) && delta > 0.0, errc::invalid_spec, "delta: must be > 0");
    require(theta - delta > 0.0 && theta + delta < half_pi, errc::out_of_domain,
            "theta +/- delta out of open range (0, pi/2)");
    const double h_hi = height(stages, arm_length, theta + delta);
    const double h_lo = height(stages, arm_length, theta - delta);
    const double l_hi = oracle_actuator_length(p, arm_length, theta + delta);
    const double l_lo = oracle_actuator_length(p, arm_length, theta - delta);
    require(l_hi != l_lo, errc::stationary_length,
            "actuator length stationary across the difference step");
    return (h_hi - h_lo) / (l_hi - l_lo);
}

/// Relative energy-balance residual |∫F dl − L_E Δh| / (L_E Δh) over
/// [theta1, theta2]. The work integral is a trapezoid over the theta grid
/// with dl taken as exact differences of the oracle length between
/// consecutive nodes, so a constant-force case telescopes to round-off.
inline double energy_residual(const LiftSpec& lift, const ActuatorPlacement& p, double theta1,
                              double theta2, int steps, const SingularityPolicy& policy) {
    lift.validate();
    p.validate_against(lift);
    check_theta(theta1);
    check_theta(theta2);
    require(theta1 < theta2, errc::invalid_spec, "need theta1 < theta2");
    require(steps >= 16, errc::invalid_spec, "steps: must be >= 16");
    const double load_effective = effective_load(lift);
    require(load_effective > 0.0, errc::undefined_residual,
            "effective load is zero: residual undefined");

    auto force_at = [&](double theta) {
        const auto f = force(lift, p, theta, policy);
        require(f.has_value(), errc::singular_range,
                "singular sample in range at theta = " + std::to_string(to_degrees(theta)) +
                    " deg");
        return *f;
    };

    double work = 0.0;
    double f_prev = force_at(theta1);
    double l_prev = oracle_actuator_length(p, lift.arm_length, theta1);
    for (int k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(steps);
        const double theta = theta1 + (theta2 - theta1) * t;
        const double f = force_at(theta);
        const double l = oracle_actuator_length(p, lift.arm_length, theta);
        work += 0.5 * (f_prev + f) * (l - l_prev);
        f_prev = f;
        l_prev = l;
    }

    const double ideal = load_effective *
                         (height(lift, theta2) - height(lift, theta1));
    return std::abs(work - ideal) / ideal;
}

inline double energy_residual(const LiftSpec& lift, const ActuatorPlacement& p, double theta1,
                              double theta2, int steps) {
    return energy_residual(lift, p, theta1, theta2, steps,
                           SingularityPolicy::for_arm(lift.arm_length));
}

}  // namespace scissor
