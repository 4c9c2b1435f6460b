#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "scissor/force_engine.hpp"
#include "scissor/lift_model.hpp"

// Seeded random inputs for the verification suites. The raw engine is
// mt19937_64 (bit-stream pinned by the standard) and all mappings below are
// plain arithmetic, so a given seed reproduces the same samples everywhere.

namespace scissor {

class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int k = static_cast<int>(unit() * span);
        if (k >= span) k = span - 1;
        return lo + k;
    }

    bool coin() { return (engine_() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Bounds for random placements. b spans both sides of the origin; i covers
/// every level the lift has.
struct PlacementBounds {
    double b_lo = -1.5;
    double b_hi = 2.5;
};

inline ActuatorPlacement sample_placement(SampleRng& rng, int stages,
                                          const PlacementBounds& bounds = {}) {
    return ActuatorPlacement{
        rng.uniform(0.0, 1.0),
        rng.uniform(bounds.b_lo, bounds.b_hi),
        rng.uniform_int(0, stages - 1),
        rng.coin() ? ArmSlope::positive : ArmSlope::negative,
    };
}

inline double sample_theta(SampleRng& rng, const ThetaDomain& dom, double margin = 0.0) {
    return rng.uniform(dom.lo + margin, dom.hi - margin);
}

/// True when the closed-form radicand kept at least `floor` of its term
/// magnitude. Below that, the geometry is near the degenerate zero-length
/// point and a relative comparison of the two length routes measures
/// cancellation noise, not agreement.
inline bool radicand_well_conditioned(const ActuatorPlacement& p, double theta,
                                      double floor = 1e-3) {
    const double c = std::cos(theta);
    return length_radicand(p, c) >= floor * length_radicand_magnitude(p, c);
}

/// Smallest |velocity denominator| over a uniform scan of [theta1, theta2].
inline double min_abs_denominator(const ActuatorPlacement& p, double theta1, double theta2,
                                  int scan_points = 129) {
    double lo = std::numeric_limits<double>::infinity();
    for (int k = 0; k < scan_points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(scan_points - 1);
        const double theta = theta1 + (theta2 - theta1) * t;
        lo = std::min(lo, std::abs(velocity_denominator(p, theta)));
    }
    return lo;
}

}  // namespace scissor
