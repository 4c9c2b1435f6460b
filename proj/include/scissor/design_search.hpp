#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scissor/error.hpp"
#include "scissor/force_engine.hpp"
#include "scissor/lift_model.hpp"

namespace scissor {

/// Evaluate one placement over a uniform theta grid. Singular samples are
/// kept as flagged rows (degenerate zero-length geometry included); they are
/// data, not errors.
inline std::vector<AnalysisRow> sweep(const LiftSpec& lift, const ActuatorPlacement& p,
                                      const ThetaDomain& dom, int samples,
                                      const SingularityPolicy& policy) {
    dom.validate();
    require(samples >= 2, errc::invalid_spec, "samples: must be >= 2");
    std::vector<AnalysisRow> rows;
    rows.reserve(samples);
    for (int k = 0; k < samples; ++k) {
        const double theta = grid_theta(dom, k, samples);
        try {
            rows.push_back(analyze_at(lift, p, theta, policy));
        } catch (const error& e) {
            if (e.code() != errc::degenerate_placement) throw;
            rows.push_back(AnalysisRow{theta, height(lift, theta),
                                       actuator_length_unchecked(p, lift.arm_length, theta),
                                       std::nullopt, std::nullopt});
        }
    }
    return rows;
}

inline std::vector<AnalysisRow> sweep(const LiftSpec& lift, const ActuatorPlacement& p,
                                      const ThetaDomain& dom, int samples) {
    return sweep(lift, p, dom, samples, SingularityPolicy::for_arm(lift.arm_length));
}

enum class ObjectiveKind { min_peak_force, min_stroke, min_force_at };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::min_peak_force;
    double theta = 0.0;  // used by min_force_at only, radians

    void validate() const {
        if (kind == ObjectiveKind::min_force_at) check_theta(theta);
    }
};

/// Optional design bounds; a candidate violating any of them is infeasible.
struct Constraints {
    std::optional<double> max_force;   // N, over the whole domain
    std::optional<double> max_length;  // m, largest actuator length
    std::optional<double> min_length;  // m, smallest actuator length

    void validate() const {
        auto positive = [](const std::optional<double>& v, const char* what) {
            if (v) require(std::isfinite(*v) && *v > 0.0, errc::invalid_spec, what);
        };
        positive(max_force, "constraints.max_force_n: must be > 0");
        positive(max_length, "constraints.max_length_m: must be > 0");
        positive(min_length, "constraints.min_length_m: must be > 0");
    }
};

/// Cross-product candidate generator: a over [0, 1] in a_steps, b over
/// [b_min, b_max] in b_steps, times the chosen level indices and slopes.
struct CandidateGrid {
    int a_steps = 21;
    double b_min = 0.0;
    double b_max = 0.0;
    int b_steps = 41;
    std::vector<int> i_values;        // empty: every level 0..n-1
    std::vector<ArmSlope> slopes;     // empty: both slopes

    void validate(const LiftSpec& lift) const {
        require(a_steps >= 1, errc::invalid_spec, "grids.a_steps: must be >= 1");
        require(b_steps >= 1, errc::invalid_spec, "grids.b_steps: must be >= 1");
        require(std::isfinite(b_min) && std::isfinite(b_max) && b_min <= b_max,
                errc::invalid_spec, "grids: need finite b_min <= b_max");
        for (int i : i_values) {
            require(i >= 0 && i <= lift.stages - 1, errc::invalid_spec,
                    "grids.i_values: each must be within 0..stages-1");
        }
    }
};

struct SearchProblem {
    LiftSpec lift;
    ThetaDomain domain;
    Objective objective;
    Constraints constraints;
    std::optional<CandidateGrid> grid;
    std::vector<ActuatorPlacement> explicit_candidates;
    int theta_samples = 512;

    void validate() const {
        lift.validate();
        domain.validate();
        objective.validate();
        constraints.validate();
        if (grid) grid->validate(lift);
        for (const auto& p : explicit_candidates) p.validate_against(lift);
        require(theta_samples >= 2, errc::invalid_spec, "theta_samples: must be >= 2");
        require(grid.has_value() || !explicit_candidates.empty(), errc::invalid_spec,
                "search: needs a candidate grid or an explicit candidate list");
    }

    std::vector<ActuatorPlacement> candidates() const {
        std::vector<ActuatorPlacement> out = explicit_candidates;
        if (!grid) return out;
        std::vector<ArmSlope> slopes = grid->slopes;
        if (slopes.empty()) slopes = {ArmSlope::negative, ArmSlope::positive};
        std::vector<int> levels = grid->i_values;
        if (levels.empty()) {
            for (int i = 0; i < lift.stages; ++i) levels.push_back(i);
        }
        for (ArmSlope slope : slopes) {
            for (int i : levels) {
                for (int ka = 0; ka < grid->a_steps; ++ka) {
                    const double a = grid->a_steps == 1
                                         ? 0.0
                                         : static_cast<double>(ka) / (grid->a_steps - 1);
                    for (int kb = 0; kb < grid->b_steps; ++kb) {
                        const double b =
                            grid->b_steps == 1
                                ? grid->b_min
                                : grid->b_min + (grid->b_max - grid->b_min) *
                                                    static_cast<double>(kb) /
                                                    (grid->b_steps - 1);
                        out.push_back(ActuatorPlacement{a, b, i, slope});
                    }
                }
            }
        }
        return out;
    }
};

struct RankedCandidate {
    ActuatorPlacement placement;
    std::optional<double> objective;  // empty when the evaluation was singular
    bool feasible = false;
};

struct SearchResult {
    std::vector<RankedCandidate> ranked;        // ascending objective, feasible first
    std::optional<RankedCandidate> best;        // top feasible entry, if any
};

namespace detail {

/// Objective + feasibility of one candidate. Singular or degenerate
/// evaluations mark the candidate infeasible instead of propagating.
inline RankedCandidate evaluate_candidate(const SearchProblem& problem,
                                          const ActuatorPlacement& p,
                                          const SingularityPolicy& policy) {
    RankedCandidate out{p, std::nullopt, true};

    std::optional<double> peak;        // cached: objective and max_force share it
    std::optional<std::pair<double, double>> stroke;
    auto eval_peak = [&]() -> bool {
        if (peak) return true;
        try {
            peak = peak_force(problem.lift, p, problem.domain, problem.theta_samples, policy)
                       .second;
            return true;
        } catch (const error& e) {
            if (e.code() != errc::singular_range) throw;
            return false;
        }
    };
    auto eval_stroke = [&]() -> bool {
        if (stroke) return true;
        try {
            stroke = stroke_range(p, problem.lift.arm_length, problem.domain,
                                  problem.theta_samples, policy);
            return true;
        } catch (const error& e) {
            if (e.code() != errc::degenerate_placement) throw;
            return false;
        }
    };

    switch (problem.objective.kind) {
        case ObjectiveKind::min_peak_force:
            if (eval_peak()) out.objective = *peak;
            break;
        case ObjectiveKind::min_stroke:
            if (eval_stroke()) out.objective = stroke->second - stroke->first;
            break;
        case ObjectiveKind::min_force_at: {
            const auto f = force(problem.lift, p, problem.objective.theta, policy);
            if (f) out.objective = *f;
            break;
        }
    }
    if (!out.objective) out.feasible = false;

    if (out.feasible && problem.constraints.max_force) {
        out.feasible = eval_peak() && *peak <= *problem.constraints.max_force;
    }
    if (out.feasible && (problem.constraints.max_length || problem.constraints.min_length)) {
        out.feasible = eval_stroke();
        if (out.feasible && problem.constraints.max_length) {
            out.feasible = stroke->second <= *problem.constraints.max_length;
        }
        if (out.feasible && problem.constraints.min_length) {
            out.feasible = stroke->first >= *problem.constraints.min_length;
        }
    }
    return out;
}

inline bool placement_less(const ActuatorPlacement& x, const ActuatorPlacement& y) {
    if (x.levels_below != y.levels_below) return x.levels_below < y.levels_below;
    if (x.slope != y.slope) return x.slope == ArmSlope::negative;
    if (x.arm_fraction != y.arm_fraction) return x.arm_fraction < y.arm_fraction;
    return x.anchor_offset < y.anchor_offset;
}

inline bool ranked_before(const RankedCandidate& x, const RankedCandidate& y) {
    if (x.feasible != y.feasible) return x.feasible;
    if (x.objective.has_value() != y.objective.has_value()) return x.objective.has_value();
    if (x.objective && y.objective && *x.objective != *y.objective) {
        return *x.objective < *y.objective;
    }
    return placement_less(x.placement, y.placement);
}

template <typename F>
double golden_section_min(F&& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

/// Evaluate every candidate, rank feasible ones first by ascending objective,
/// ties broken lexicographically by (i, slope, a, b). Deterministic for
/// identical problems. An empty feasible set yields best = nullopt.
inline SearchResult grid_search(const SearchProblem& problem, const SingularityPolicy& policy) {
    problem.validate();
    SearchResult result;
    for (const auto& candidate : problem.candidates()) {
        result.ranked.push_back(detail::evaluate_candidate(problem, candidate, policy));
    }
    std::sort(result.ranked.begin(), result.ranked.end(), detail::ranked_before);
    if (!result.ranked.empty() && result.ranked.front().feasible) {
        result.best = result.ranked.front();
    }
    return result;
}

inline SearchResult grid_search(const SearchProblem& problem) {
    return grid_search(problem, SingularityPolicy::for_arm(problem.lift.arm_length));
}

/// Local improvement of a and b by alternating golden-section line searches
/// (i and slope stay fixed). Infeasible points act as +inf, so the result
/// never worsens the seed's objective and never leaves the feasible box:
/// a in [0, 1], b in the problem grid's b-range (b fixed if there is none).
inline ActuatorPlacement refine(const LiftSpec& lift, const ActuatorPlacement& seed,
                                const SearchProblem& problem, const SingularityPolicy& policy) {
    problem.validate();
    seed.validate_against(lift);

    auto score = [&](const ActuatorPlacement& p) {
        const RankedCandidate c = detail::evaluate_candidate(problem, p, policy);
        return c.feasible ? *c.objective : std::numeric_limits<double>::infinity();
    };

    ActuatorPlacement current = seed;
    double current_value = score(current);
    require(std::isfinite(current_value), errc::infeasible_seed,
            "refine: seed placement is infeasible");

    const double b_lo = problem.grid ? problem.grid->b_min : seed.anchor_offset;
    const double b_hi = problem.grid ? problem.grid->b_max : seed.anchor_offset;

    for (int round = 0; round < 100; ++round) {
        const double round_start = current_value;

        const double a_best = detail::golden_section_min(
            [&](double a) {
                ActuatorPlacement trial = current;
                trial.arm_fraction = a;
                return score(trial);
            },
            0.0, 1.0);
        ActuatorPlacement trial_a = current;
        trial_a.arm_fraction = a_best;
        if (const double v = score(trial_a); v < current_value) {
            current = trial_a;
            current_value = v;
        }

        if (b_hi > b_lo) {
            const double b_best = detail::golden_section_min(
                [&](double b) {
                    ActuatorPlacement trial = current;
                    trial.anchor_offset = b;
                    return score(trial);
                },
                b_lo, b_hi);
            ActuatorPlacement trial_b = current;
            trial_b.anchor_offset = b_best;
            if (const double v = score(trial_b); v < current_value) {
                current = trial_b;
                current_value = v;
            }
        }

        const double improvement = round_start - current_value;
        if (improvement < 1e-9 * std::max(1.0, std::abs(round_start))) break;
    }
    return current;
}

inline ActuatorPlacement refine(const LiftSpec& lift, const ActuatorPlacement& seed,
                                const SearchProblem& problem) {
    return refine(lift, seed, problem, SingularityPolicy::for_arm(lift.arm_length));
}

}  // namespace scissor
