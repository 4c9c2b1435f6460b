#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "scissor/design_search.hpp"
#include "scissor/force_engine.hpp"
#include "scissor/lift_model.hpp"

// Output emission for the CLI: CSV and JSON sweeps with identical numeric
// values, the optimizer report, and a self-contained SVG force chart.
// Singular samples never surface as numbers in any format.

namespace scissor {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Fixed significant-digit formatting for chart labels.
inline std::string format_label(double v, int precision = 6) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                                   precision);
    return std::string(buf, res.ptr);
}

inline constexpr const char* sweep_csv_header =
    "theta_deg,theta_rad,height_m,actuator_length_m,dh_dl,force_n,singular";

inline std::string sweep_to_csv(const std::vector<AnalysisRow>& rows) {
    std::string out(sweep_csv_header);
    out += '\n';
    for (const AnalysisRow& row : rows) {
        out += format_double(to_degrees(row.theta));
        out += ',';
        out += format_double(row.theta);
        out += ',';
        out += format_double(row.height);
        out += ',';
        out += format_double(row.actuator_length);
        out += ',';
        if (row.dh_dl) out += format_double(*row.dh_dl);
        out += ',';
        if (row.force) out += format_double(*row.force);
        out += ',';
        out += row.singular() ? "true" : "false";
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json row_to_json(const AnalysisRow& row) {
    nlohmann::ordered_json j;
    j["theta_deg"] = to_degrees(row.theta);
    j["theta_rad"] = row.theta;
    j["height_m"] = row.height;
    j["actuator_length_m"] = row.actuator_length;
    j["dh_dl"] = row.dh_dl ? nlohmann::ordered_json(*row.dh_dl) : nlohmann::ordered_json();
    j["force_n"] = row.force ? nlohmann::ordered_json(*row.force) : nlohmann::ordered_json();
    j["singular"] = row.singular();
    return j;
}

inline std::string sweep_to_json(const std::vector<AnalysisRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const AnalysisRow& row : rows) arr.push_back(row_to_json(row));
    return arr.dump(2) + "\n";
}

/// Force-vs-theta line chart in a fixed 800x500 viewport. Contiguous
/// non-singular runs become separate paths, so the line breaks across
/// singular samples instead of bridging them.
inline std::string sweep_to_svg(const std::vector<AnalysisRow>& rows) {
    constexpr double width = 800.0;
    constexpr double height_px = 500.0;
    constexpr double margin_left = 80.0;
    constexpr double margin_right = 24.0;
    constexpr double margin_top = 32.0;
    constexpr double margin_bottom = 56.0;
    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height_px - margin_top - margin_bottom;

    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = 0.0, y_hi = 1.0;
    bool have_x = false, have_y = false;
    for (const AnalysisRow& row : rows) {
        const double deg = to_degrees(row.theta);
        if (!have_x) {
            x_lo = x_hi = deg;
            have_x = true;
        } else {
            x_lo = std::min(x_lo, deg);
            x_hi = std::max(x_hi, deg);
        }
        if (row.force) {
            if (!have_y) {
                y_lo = y_hi = *row.force;
                have_y = true;
            } else {
                y_lo = std::min(y_lo, *row.force);
                y_hi = std::max(y_hi, *row.force);
            }
        }
    }
    if (x_hi - x_lo < 1e-12) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if (!have_y) {
        y_lo = -1.0;
        y_hi = 1.0;
    } else {
        const double pad = std::max(0.05 * (y_hi - y_lo), 1e-9 + 0.05 * std::abs(y_hi));
        y_lo -= pad;
        y_hi += pad;
    }

    auto x_px = [&](double deg) {
        return margin_left + (deg - x_lo) / (x_hi - x_lo) * plot_w;
    };
    auto y_px = [&](double f) {
        return margin_top + (y_hi - f) / (y_hi - y_lo) * plot_h;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">actuator force vs arm angle</text>\n";

    // frame
    svg += "<rect x=\"" + format_label(margin_left) + "\" y=\"" + format_label(margin_top) +
           "\" width=\"" + format_label(plot_w) + "\" height=\"" + format_label(plot_h) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";

    constexpr int ticks = 6;
    for (int k = 0; k < ticks; ++k) {
        const double t = static_cast<double>(k) / (ticks - 1);
        const double xv = x_lo + t * (x_hi - x_lo);
        const double yv = y_lo + t * (y_hi - y_lo);
        const double xp = x_px(xv);
        const double yp = y_px(yv);
        svg += "<line x1=\"" + format_label(xp) + "\" y1=\"" +
               format_label(margin_top + plot_h) + "\" x2=\"" + format_label(xp) + "\" y2=\"" +
               format_label(margin_top + plot_h + 6) + "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + format_label(xp) + "\" y=\"" +
               format_label(margin_top + plot_h + 22) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_label(xv, 5) + "</text>\n";
        svg += "<line x1=\"" + format_label(margin_left - 6) + "\" y1=\"" + format_label(yp) +
               "\" x2=\"" + format_label(margin_left) + "\" y2=\"" + format_label(yp) +
               "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + format_label(margin_left - 10) + "\" y=\"" +
               format_label(yp + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_label(yv, 5) + "</text>\n";
    }
    svg += "<text x=\"" + format_label(margin_left + plot_w / 2) + "\" y=\"" +
           format_label(height_px - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">theta "
           "[deg]</text>\n";
    svg += "<text x=\"18\" y=\"" + format_label(margin_top + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 18 " +
           format_label(margin_top + plot_h / 2) + ")\">force [N]</text>\n";

    // one path per contiguous non-singular run
    std::string d;
    bool in_run = false;
    auto flush = [&]() {
        if (in_run && !d.empty()) {
            svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#c0392b\" "
                   "stroke-width=\"1.5\"/>\n";
        }
        d.clear();
        in_run = false;
    };
    for (const AnalysisRow& row : rows) {
        if (!row.force) {
            flush();
            continue;
        }
        const std::string px = format_label(x_px(to_degrees(row.theta)), 8);
        const std::string py = format_label(y_px(*row.force), 8);
        d += (in_run ? "L" : "M") + px + " " + py;
        in_run = true;
    }
    flush();

    // mark singular samples on the axis
    for (const AnalysisRow& row : rows) {
        if (!row.singular()) continue;
        svg += "<circle cx=\"" + format_label(x_px(to_degrees(row.theta)), 8) + "\" cy=\"" +
               format_label(margin_top + plot_h, 8) +
               "\" r=\"3\" fill=\"none\" stroke=\"#c0392b\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

inline nlohmann::ordered_json placement_to_json(const ActuatorPlacement& p) {
    nlohmann::ordered_json j;
    j["a"] = p.arm_fraction;
    j["b"] = p.anchor_offset;
    j["i"] = p.levels_below;
    j["slope"] = to_string(p.slope);
    return j;
}

inline const char* to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::min_peak_force: return "min_peak_force";
        case ObjectiveKind::min_stroke: return "min_stroke";
        case ObjectiveKind::min_force_at: return "min_force_at";
    }
    return "unknown";
}

inline std::string search_result_to_json(const SearchResult& result,
                                         const Objective& objective) {
    nlohmann::ordered_json report;
    nlohmann::ordered_json obj;
    obj["type"] = to_string(objective.kind);
    if (objective.kind == ObjectiveKind::min_force_at) {
        obj["theta_deg"] = to_degrees(objective.theta);
    }
    report["objective"] = obj;

    nlohmann::ordered_json ranked = nlohmann::ordered_json::array();
    for (const RankedCandidate& c : result.ranked) {
        nlohmann::ordered_json entry = placement_to_json(c.placement);
        entry["objective"] =
            c.objective ? nlohmann::ordered_json(*c.objective) : nlohmann::ordered_json();
        entry["feasible"] = c.feasible;
        ranked.push_back(entry);
    }
    report["ranked"] = ranked;

    if (result.best) {
        nlohmann::ordered_json best = placement_to_json(result.best->placement);
        best["objective"] = *result.best->objective;
        best["feasible"] = true;
        report["best"] = best;
    } else {
        report["best"] = nullptr;
    }
    return report.dump(2) + "\n";
}

}  // namespace scissor
