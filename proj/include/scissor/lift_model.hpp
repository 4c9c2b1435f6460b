#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "scissor/error.hpp"

namespace scissor {

inline constexpr double half_pi = std::numbers::pi / 2.0;

constexpr double to_radians(double degrees) { return degrees * (std::numbers::pi / 180.0); }
constexpr double to_degrees(double radians) { return radians * (180.0 / std::numbers::pi); }

/// Physical description of an n-stage lift: n crossing levels of arms of
/// length D, self-weight W, carrying payload L. Forces in newtons, lengths
/// in meters.
struct LiftSpec {
    int stages = 1;            // n
    double arm_length = 1.0;   // D, m
    double lift_weight = 0.0;  // W, N
    double load = 0.0;         // L, N

    void validate() const {
        require(stages >= 1, errc::invalid_spec, "lift.stages: must be >= 1");
        require(std::isfinite(arm_length) && arm_length > 0.0, errc::invalid_spec,
                "lift.arm_length_m: must be finite and > 0");
        require(std::isfinite(lift_weight) && lift_weight >= 0.0, errc::invalid_spec,
                "lift.lift_weight_n: must be finite and >= 0");
        require(std::isfinite(load) && load >= 0.0, errc::invalid_spec,
                "lift.load_n: must be finite and >= 0");
    }
};

/// Slope of the arm carrying the force-application point Q, in the frame
/// with the origin at the lowest static-side hinge. Negative selects the
/// Case-1 expressions, Positive the Case-2 expressions.
enum class ArmSlope { negative, positive };

inline const char* to_string(ArmSlope s) {
    return s == ArmSlope::negative ? "negative" : "positive";
}

/// Where the actuator acts: Q sits a fraction `arm_fraction` (a) along its
/// arm from the hinge below it, with `levels_below` (i) complete scissor
/// levels underneath, and the ground anchor P at `anchor_offset` (b) arm
/// lengths from the origin along the X-axis. b may be negative or exceed
/// cos(theta); the squared length forms stay valid.
struct ActuatorPlacement {
    double arm_fraction = 0.0;   // a in [0, 1]
    double anchor_offset = 0.0;  // b, in units of arm length, any real
    int levels_below = 0;        // i >= 0
    ArmSlope slope = ArmSlope::negative;

    void validate() const {
        require(std::isfinite(arm_fraction) && arm_fraction >= 0.0 && arm_fraction <= 1.0,
                errc::invalid_spec, "placement.a: must be within [0, 1]");
        require(std::isfinite(anchor_offset), errc::invalid_spec,
                "placement.b: must be finite");
        require(levels_below >= 0, errc::invalid_spec, "placement.i: must be >= 0");
    }

    /// The arm carrying Q belongs to level i + 1, so i <= n - 1.
    void validate_against(const LiftSpec& lift) const {
        validate();
        require(levels_below <= lift.stages - 1, errc::invalid_spec,
                "placement.i: arm carrying Q must exist (i <= stages - 1)");
    }
};

/// Dimensionless constants derived from a placement; they carry the entire
/// placement dependence of the length and force expressions.
struct PlacementConstants {
    double k_a;  // (1-a)^2 - (i+a)^2
    double k_b;  // b(1-a)
    double k_c;  // b^2 + (i+a)^2
    double k_d;  // i(2a+i)
};

inline PlacementConstants lift_constants(double a, double b, int i) {
    const double one_minus_a = 1.0 - a;
    const double i_plus_a = static_cast<double>(i) + a;
    return PlacementConstants{
        one_minus_a * one_minus_a - i_plus_a * i_plus_a,
        b * one_minus_a,
        b * b + i_plus_a * i_plus_a,
        static_cast<double>(i) * (2.0 * a + static_cast<double>(i)),
    };
}

inline PlacementConstants lift_constants(const ActuatorPlacement& p) {
    return lift_constants(p.arm_fraction, p.anchor_offset, p.levels_below);
}

/// Operating range of the arm angle, radians, strictly inside (0, pi/2).
/// Both endpoints are non-operating states (folded flat / fully extended).
struct ThetaDomain {
    double lo;
    double hi;

    void validate() const {
        require(std::isfinite(lo) && std::isfinite(hi), errc::invalid_spec,
                "domain: bounds must be finite");
        require(lo > 0.0 && lo <= hi && hi < half_pi, errc::invalid_spec,
                "domain: need 0 < theta_lo <= theta_hi < pi/2");
    }
};

inline void check_theta(double theta) {
    require(std::isfinite(theta) && theta > 0.0 && theta < half_pi, errc::out_of_domain,
            "theta out of open range (0, pi/2)");
}

/// Effective load: payload plus half the lift's own weight. Lifting the
/// distributed lift mass to height h costs the same work as lifting W/2 to h.
inline double effective_load(double load, double lift_weight) {
    require(std::isfinite(load) && load >= 0.0, errc::invalid_spec,
            "load: must be finite and >= 0");
    require(std::isfinite(lift_weight) && lift_weight >= 0.0, errc::invalid_spec,
            "lift_weight: must be finite and >= 0");
    return load + 0.5 * lift_weight;
}

inline double effective_load(const LiftSpec& lift) {
    return effective_load(lift.load, lift.lift_weight);
}

/// Platform height h = n D sin(theta); strictly increasing on (0, pi/2).
inline double height(int stages, double arm_length, double theta) {
    check_theta(theta);
    return static_cast<double>(stages) * arm_length * std::sin(theta);
}

inline double height(const LiftSpec& lift, double theta) {
    return height(lift.stages, lift.arm_length, theta);
}

/// Inverse of height(): theta = arcsin(h / (nD)) for 0 < h < nD.
inline double theta_from_height(double h, int stages, double arm_length) {
    const double reach = static_cast<double>(stages) * arm_length;
    require(std::isfinite(h) && h > 0.0 && h < reach, errc::out_of_domain,
            "height out of open range (0, n*D)");
    return std::asin(h / reach);
}

/// Which hinge column a shared hinge belongs to.
enum class HingeColumn { static_side, mobile_side };

/// Placement coordinates without the ground anchor; what the shared-hinge
/// rule determines.
struct PlacementFragment {
    double arm_fraction;
    int levels_below;
    ArmSlope slope;

    ActuatorPlacement anchored(double anchor_offset) const {
        return ActuatorPlacement{arm_fraction, anchor_offset, levels_below, slope};
    }
};

/// Shared-hinge arm selection: when Q is a hinge shared by two arms, the arm
/// to attribute it to is the one lying entirely above the horizontal through
/// Q. That always gives a = 0 and i = level; a hinge on the static column is
/// the foot of a positively sloping arm, a mobile-column hinge the foot of a
/// negatively sloping one. The topmost hinge (level == stages) has no arm
/// above it.
inline PlacementFragment resolve_shared_hinge(HingeColumn column, int level, int stages) {
    require(stages >= 1, errc::invalid_spec, "stages: must be >= 1");
    require(level >= 0 && level <= stages, errc::invalid_spec,
            "hinge level: must be within 0..stages");
    require(level != stages, errc::unsupported_placement,
            "topmost hinge has no arm above it");
    return PlacementFragment{
        0.0, level, column == HingeColumn::static_side ? ArmSlope::positive : ArmSlope::negative};
}

}  // namespace scissor
