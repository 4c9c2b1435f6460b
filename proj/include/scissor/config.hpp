#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scissor/design_search.hpp"
#include "scissor/error.hpp"
#include "scissor/lift_model.hpp"

// JSON config ingestion. Angles cross this boundary in degrees and are
// converted to radians exactly once, here. Validation is strict: unknown
// keys are rejected and every failure names the offending field path.

namespace scissor {

struct ConfigDocument {
    LiftSpec lift;
    ActuatorPlacement placement;
    ThetaDomain domain;                    // radians
    std::optional<SearchProblem> search;   // populated with lift + domain
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void config_fail(const std::string& path, const std::string& what) {
    raise(errc::bad_config, path + ": " + what);
}

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) config_fail(path + "." + key, "unknown key");
    }
}

inline const json& require_object(const json& parent, const std::string& path,
                                  const char* key) {
    if (!parent.contains(key)) config_fail(path.empty() ? key : path + "." + key, "missing");
    const json& v = parent.at(key);
    if (!v.is_object()) {
        config_fail(path.empty() ? key : path + "." + key, "must be an object");
    }
    return v;
}

inline double get_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) config_fail(path + "." + key, "missing");
    const json& v = obj.at(key);
    if (!v.is_number()) config_fail(path + "." + key, "must be a number");
    return v.get<double>();
}

inline int get_int(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) config_fail(path + "." + key, "missing");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) config_fail(path + "." + key, "must be an integer");
    return v.get<int>();
}

inline ArmSlope get_slope(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) config_fail(path + "." + key, "missing");
    const json& v = obj.at(key);
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "negative") return ArmSlope::negative;
        if (s == "positive") return ArmSlope::positive;
    }
    config_fail(path + "." + key, "must be \"negative\" or \"positive\"");
}

inline LiftSpec parse_lift(const json& obj) {
    reject_unknown_keys(obj, "lift", {"stages", "arm_length_m", "lift_weight_n", "load_n"});
    LiftSpec lift;
    lift.stages = get_int(obj, "lift", "stages");
    lift.arm_length = get_number(obj, "lift", "arm_length_m");
    lift.lift_weight = get_number(obj, "lift", "lift_weight_n");
    lift.load = get_number(obj, "lift", "load_n");
    lift.validate();
    return lift;
}

inline ActuatorPlacement parse_placement(const json& obj, const std::string& path) {
    reject_unknown_keys(obj, path, {"a", "b", "i", "slope"});
    ActuatorPlacement p;
    p.arm_fraction = get_number(obj, path, "a");
    p.anchor_offset = get_number(obj, path, "b");
    p.levels_below = get_int(obj, path, "i");
    p.slope = get_slope(obj, path, "slope");
    p.validate();
    return p;
}

inline ThetaDomain parse_domain(const json& obj) {
    reject_unknown_keys(obj, "domain", {"theta_lo_deg", "theta_hi_deg"});
    const double lo_deg = get_number(obj, "domain", "theta_lo_deg");
    const double hi_deg = get_number(obj, "domain", "theta_hi_deg");
    if (!(lo_deg > 0.0 && lo_deg <= hi_deg && hi_deg < 90.0)) {
        config_fail("domain", "need 0 < theta_lo_deg <= theta_hi_deg < 90");
    }
    return ThetaDomain{to_radians(lo_deg), to_radians(hi_deg)};
}

inline Objective parse_objective(const json& obj) {
    reject_unknown_keys(obj, "search.objective", {"type", "theta_deg"});
    if (!obj.contains("type") || !obj.at("type").is_string()) {
        config_fail("search.objective.type", "must be a string");
    }
    const auto type = obj.at("type").get<std::string>();
    Objective objective;
    if (type == "min_peak_force") {
        objective.kind = ObjectiveKind::min_peak_force;
    } else if (type == "min_stroke") {
        objective.kind = ObjectiveKind::min_stroke;
    } else if (type == "min_force_at") {
        objective.kind = ObjectiveKind::min_force_at;
        const double deg = get_number(obj, "search.objective", "theta_deg");
        if (!(deg > 0.0 && deg < 90.0)) {
            config_fail("search.objective.theta_deg", "must be within (0, 90)");
        }
        objective.theta = to_radians(deg);
    } else {
        config_fail("search.objective.type",
                    "must be \"min_peak_force\", \"min_stroke\" or \"min_force_at\"");
    }
    return objective;
}

inline Constraints parse_constraints(const json& obj) {
    reject_unknown_keys(obj, "search.constraints",
                        {"max_force_n", "max_length_m", "min_length_m"});
    Constraints c;
    if (obj.contains("max_force_n")) {
        c.max_force = get_number(obj, "search.constraints", "max_force_n");
    }
    if (obj.contains("max_length_m")) {
        c.max_length = get_number(obj, "search.constraints", "max_length_m");
    }
    if (obj.contains("min_length_m")) {
        c.min_length = get_number(obj, "search.constraints", "min_length_m");
    }
    c.validate();
    return c;
}

inline SearchProblem parse_search(const json& obj, const LiftSpec& lift,
                                  const ThetaDomain& domain) {
    reject_unknown_keys(obj, "search", {"objective", "constraints", "grids"});
    SearchProblem problem;
    problem.lift = lift;
    problem.domain = domain;
    problem.objective = parse_objective(require_object(obj, "search", "objective"));
    if (obj.contains("constraints")) {
        problem.constraints = parse_constraints(require_object(obj, "search", "constraints"));
    }

    const json& grids = require_object(obj, "search", "grids");
    reject_unknown_keys(grids, "search.grids",
                        {"a_steps", "b_min", "b_max", "b_steps", "i_values", "slopes",
                         "theta_samples", "candidates"});
    if (grids.contains("theta_samples")) {
        problem.theta_samples = get_int(grids, "search.grids", "theta_samples");
        if (problem.theta_samples < 2) {
            config_fail("search.grids.theta_samples", "must be >= 2");
        }
    }
    if (grids.contains("candidates")) {
        const json& list = grids.at("candidates");
        if (!list.is_array()) config_fail("search.grids.candidates", "must be an array");
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string path = "search.grids.candidates[" + std::to_string(k) + "]";
            if (!list[k].is_object()) config_fail(path, "must be an object");
            problem.explicit_candidates.push_back(parse_placement(list[k], path));
        }
    }

    const bool has_grid_axes = grids.contains("b_min") || grids.contains("b_max") ||
                               grids.contains("a_steps") || grids.contains("b_steps") ||
                               grids.contains("i_values") || grids.contains("slopes");
    if (has_grid_axes) {
        CandidateGrid grid;
        grid.b_min = get_number(grids, "search.grids", "b_min");
        grid.b_max = get_number(grids, "search.grids", "b_max");
        if (grids.contains("a_steps")) grid.a_steps = get_int(grids, "search.grids", "a_steps");
        if (grids.contains("b_steps")) grid.b_steps = get_int(grids, "search.grids", "b_steps");
        if (grids.contains("i_values")) {
            const json& list = grids.at("i_values");
            if (!list.is_array()) config_fail("search.grids.i_values", "must be an array");
            for (const auto& v : list) {
                if (!v.is_number_integer()) {
                    config_fail("search.grids.i_values", "entries must be integers");
                }
                grid.i_values.push_back(v.get<int>());
            }
        }
        if (grids.contains("slopes")) {
            const json& list = grids.at("slopes");
            if (!list.is_array()) config_fail("search.grids.slopes", "must be an array");
            for (const auto& v : list) {
                if (!v.is_string()) config_fail("search.grids.slopes", "entries must be strings");
                const auto s = v.get<std::string>();
                if (s == "negative") {
                    grid.slopes.push_back(ArmSlope::negative);
                } else if (s == "positive") {
                    grid.slopes.push_back(ArmSlope::positive);
                } else {
                    config_fail("search.grids.slopes",
                                "entries must be \"negative\" or \"positive\"");
                }
            }
        }
        problem.grid = grid;
    }

    try {
        problem.validate();
    } catch (const error& e) {
        config_fail("search", e.what());
    }
    return problem;
}

}  // namespace detail

/// Parse and validate a config document. Throws error{errc::bad_config}
/// whose message starts with the first failing field path.
inline ConfigDocument parse_config(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(errc::bad_config, std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) raise(errc::bad_config, "config: top level must be an object");
    detail::reject_unknown_keys(root, "config", {"lift", "placement", "domain", "search"});

    ConfigDocument doc;
    try {
        doc.lift = detail::parse_lift(detail::require_object(root, "", "lift"));
        doc.placement =
            detail::parse_placement(detail::require_object(root, "", "placement"), "placement");
        doc.domain = detail::parse_domain(detail::require_object(root, "", "domain"));
        doc.placement.validate_against(doc.lift);
        if (root.contains("search")) {
            doc.search = detail::parse_search(detail::require_object(root, "", "search"),
                                              doc.lift, doc.domain);
        }
    } catch (const error& e) {
        if (e.code() == errc::bad_config) throw;
        raise(errc::bad_config, e.what());
    }
    return doc;
}

}  // namespace scissor
