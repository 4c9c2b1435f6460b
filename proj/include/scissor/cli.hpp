#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scissor/config.hpp"
#include "scissor/design_search.hpp"
#include "scissor/report.hpp"
#include "scissor/verify.hpp"

// Command implementations behind the CLI binary. Exit codes, disjoint:
//   0 success, 1 invalid input, 2 singular point,
//   3 no feasible placement, 4 verification failure.

namespace scissor::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid_input = 1;
inline constexpr int exit_singular = 2;
inline constexpr int exit_no_feasible = 3;
inline constexpr int exit_verify_failed = 4;

namespace detail {

inline std::optional<ConfigDocument> load_config(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read config file: " << path << "\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const error& e) {
        err << "config error: " << e.what() << "\n";
        return std::nullopt;
    }
}

inline bool write_file(const std::string& path, const std::string& content,
                       std::ostream& err) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        err << "error: cannot write output file: " << path << "\n";
        return false;
    }
    out << content;
    out.flush();
    if (!out) {
        err << "error: failed while writing: " << path << "\n";
        return false;
    }
    return true;
}

inline std::string describe_placement(const ActuatorPlacement& p) {
    return "a=" + format_double(p.arm_fraction) + " b=" + format_double(p.anchor_offset) +
           " i=" + std::to_string(p.levels_below) + " slope=" + to_string(p.slope);
}

}  // namespace detail

/// analyze: one labeled JSON row on stdout for the given angle.
inline int cmd_analyze(const std::string& config_path, double theta_deg, std::ostream& out,
                       std::ostream& err) {
    const auto config = detail::load_config(config_path, err);
    if (!config) return exit_invalid_input;
    if (!(theta_deg > 0.0 && theta_deg < 90.0)) {
        err << "error: theta out of open range (0, 90) degrees\n";
        return exit_invalid_input;
    }
    const double theta = to_radians(theta_deg);
    const auto policy = SingularityPolicy::for_arm(config->lift.arm_length);
    AnalysisRow row{};
    try {
        row = analyze_at(config->lift, config->placement, theta, policy);
    } catch (const error& e) {
        if (e.code() == errc::degenerate_placement) {
            err << "singular: zero-length actuator at theta = " << format_double(theta_deg)
                << " deg (anchor coincides with the application point; dh/dl denominator "
                   "vanishes with it)\n";
            return exit_singular;
        }
        err << "error: " << e.what() << "\n";
        return exit_invalid_input;
    }
    if (row.singular()) {
        const char* denominator = config->placement.slope == ArmSlope::negative
                                      ? "K_B*tan(theta) - K_A*sin(theta)"
                                      : "a*b*tan(theta) + K_D*sin(theta)";
        err << "singular: velocity-ratio denominator " << denominator
            << " vanished at theta = " << format_double(theta_deg)
            << " deg (|denominator| <= " << format_double(policy.eps_denominator)
            << "); no finite force exists here\n";
        return exit_singular;
    }
    out << row_to_json(row).dump(2) << "\n";
    return exit_ok;
}

/// sweep: uniform theta grid rendered to csv, json or svg.
inline int cmd_sweep(const std::string& config_path, int samples, const std::string& format,
                     const std::string& out_path, std::ostream& err) {
    const auto config = detail::load_config(config_path, err);
    if (!config) return exit_invalid_input;
    if (samples < 2) {
        err << "error: samples must be >= 2\n";
        return exit_invalid_input;
    }
    if (format != "csv" && format != "json" && format != "svg") {
        err << "error: format must be csv, json or svg\n";
        return exit_invalid_input;
    }
    std::vector<AnalysisRow> rows;
    try {
        rows = sweep(config->lift, config->placement, config->domain, samples,
                     SingularityPolicy::for_arm(config->lift.arm_length));
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_input;
    }
    std::string content;
    if (format == "csv") {
        content = sweep_to_csv(rows);
    } else if (format == "json") {
        content = sweep_to_json(rows);
    } else {
        content = sweep_to_svg(rows);
    }
    if (!detail::write_file(out_path, content, err)) return exit_invalid_input;
    return exit_ok;
}

/// optimize: grid search over the config's search section, ranked JSON
/// report to the output path. Deterministic: identical inputs give
/// byte-identical reports.
inline int cmd_optimize(const std::string& config_path, const std::string& out_path,
                        std::ostream& out, std::ostream& err) {
    const auto config = detail::load_config(config_path, err);
    if (!config) return exit_invalid_input;
    if (!config->search) {
        err << "config error: search: section required for optimize\n";
        return exit_invalid_input;
    }
    SearchResult result;
    try {
        result = grid_search(*config->search,
                             SingularityPolicy::for_arm(config->lift.arm_length));
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_input;
    }
    const std::string report = search_result_to_json(result, config->search->objective);
    if (!detail::write_file(out_path, report, err)) return exit_invalid_input;
    if (!result.best) {
        out << "no feasible placement\n";
        return exit_no_feasible;
    }
    out << "best: " << detail::describe_placement(result.best->placement)
        << " objective=" << format_double(*result.best->objective) << "\n";
    return exit_ok;
}

/// verify: seeded randomized cross-checks of the closed forms against the
/// coordinate oracle; prints the worst relative deviations.
inline int cmd_verify(const std::string& config_path, int trials, std::uint64_t seed,
                      std::ostream& out, std::ostream& err) {
    const auto config = detail::load_config(config_path, err);
    if (!config) return exit_invalid_input;
    if (trials < 1) {
        err << "error: trials must be >= 1\n";
        return exit_invalid_input;
    }
    if (effective_load(config->lift) <= 0.0) {
        err << "error: lift: effective load must be > 0 to run the energy suite\n";
        return exit_invalid_input;
    }
    VerifySummary summary;
    try {
        summary = run_verification(config->lift, config->domain, trials, seed);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_input;
    }

    auto print_suite = [&](const char* name, const SuiteResult& suite, double tol,
                           bool is_range) {
        out << name << ": max relative deviation " << format_double(suite.max_deviation)
            << " (tolerance " << format_double(tol) << ", samples " << suite.samples
            << ") worst at " << detail::describe_placement(suite.worst_placement);
        if (is_range) {
            out << " theta range [" << format_double(to_degrees(suite.worst_theta)) << ", "
                << format_double(to_degrees(suite.worst_theta2)) << "] deg";
        } else {
            out << " theta = " << format_double(to_degrees(suite.worst_theta)) << " deg";
        }
        out << "\n";
    };
    print_suite("oracle-length", summary.length, summary.tolerances.length, false);
    print_suite("fd-derivative", summary.derivative, summary.tolerances.derivative, false);
    print_suite("energy-residual", summary.energy, summary.tolerances.energy, true);

    if (!summary.all_within()) {
        err << "verification failed: deviation above tolerance (see worst offenders above)\n";
        return exit_verify_failed;
    }
    out << "verify: PASS (trials=" << trials << " seed=" << seed << ")\n";
    return exit_ok;
}

}  // namespace scissor::cli
