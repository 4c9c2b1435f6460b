#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end checks through the installed binary: exit codes, stdout/stderr
// text, and emitted files. The binary path arrives via SCISSOR_CLI_BIN.

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
    const char* path = std::getenv("SCISSOR_CLI_BIN");
    REQUIRE(path != nullptr);
    return path;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "scissor_cli_tests";
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const fs::path out_file = work_dir() / "stdout.txt";
    const fs::path err_file = work_dir() / "stderr.txt";
    const std::string cmd = "\"" + cli_path() + "\" " + args + " > " + out_file.string() +
                            " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return RunResult{WEXITSTATUS(status), read_text(out_file), read_text(err_file)};
}

const char* screw_jack_config_text = R"({
  "lift": {"stages": 2, "arm_length_m": 1.0, "lift_weight_n": 0.0, "load_n": 100.0},
  "placement": {"a": 0.0, "b": 2.0, "i": 0, "slope": "negative"},
  "domain": {"theta_lo_deg": 20.0, "theta_hi_deg": 70.0}
})";

fs::path screw_jack_config() {
    const fs::path path = work_dir() / "screw_jack.json";
    write_text(path, screw_jack_config_text);
    return path;
}

fs::path vertical_config() {
    const fs::path path = work_dir() / "vertical.json";
    write_text(path, R"({
  "lift": {"stages": 2, "arm_length_m": 1.0, "lift_weight_n": 40.0, "load_n": 80.0},
  "placement": {"a": 0.0, "b": 0.0, "i": 1, "slope": "positive"},
  "domain": {"theta_lo_deg": 20.0, "theta_hi_deg": 70.0}
})");
    return path;
}

}  // namespace

TEST_CASE("analyze prints one labeled row") {
    const auto config = screw_jack_config();

    SECTION("screw jack at 45 degrees") {
        const auto run = run_cli("analyze --config " + config.string() + " --theta-deg 45");
        CHECK(run.exit_code == 0);
        const auto parsed = nlohmann::json::parse(run.out);
        CHECK(parsed["dh_dl"].get<double>() == Catch::Approx(2.0).epsilon(1e-9));
        CHECK(parsed["force_n"].get<double>() == Catch::Approx(200.0).epsilon(1e-9));
        CHECK(parsed["theta_deg"].get<double>() == 45.0);
        CHECK_FALSE(parsed["singular"].get<bool>());
    }
    SECTION("theta at the excluded endpoint") {
        const auto run = run_cli("analyze --config " + config.string() + " --theta-deg 0");
        CHECK(run.exit_code == 1);
        CHECK(run.err.find("theta out of open range") != std::string::npos);
    }
    SECTION("bad slope enum names the field") {
        const fs::path bad = work_dir() / "bad_slope.json";
        std::string text = screw_jack_config_text;
        text.replace(text.find("\"negative\""), 10, "\"diagonal\"");
        write_text(bad, text);
        const auto run = run_cli("analyze --config " + bad.string() + " --theta-deg 45");
        CHECK(run.exit_code == 1);
        CHECK(run.err.find("placement.slope") != std::string::npos);
    }
    SECTION("singular point exits 2 and names the denominator") {
        const fs::path singular = work_dir() / "singular.json";
        write_text(singular, R"({
  "lift": {"stages": 1, "arm_length_m": 1.0, "lift_weight_n": 0.0, "load_n": 50.0},
  "placement": {"a": 0.5, "b": 0.0, "i": 0, "slope": "negative"},
  "domain": {"theta_lo_deg": 20.0, "theta_hi_deg": 70.0}
})");
        // central-pivot placement: the denominator is identically zero
        const auto run = run_cli("analyze --config " + singular.string() + " --theta-deg 40");
        CHECK(run.exit_code == 2);
        CHECK(run.err.find("denominator") != std::string::npos);
    }
    SECTION("missing config file") {
        const auto run = run_cli("analyze --config /nonexistent.json --theta-deg 45");
        CHECK(run.exit_code == 1);
    }
}

TEST_CASE("sweep emits csv, json and svg") {
    const auto config = vertical_config();
    const fs::path csv_path = work_dir() / "sweep.csv";
    const fs::path json_path = work_dir() / "sweep.json";
    const fs::path svg_path = work_dir() / "sweep.svg";

    SECTION("constant-force rows in csv") {
        const auto run = run_cli("sweep --config " + config.string() +
                                 " --samples 5 --format csv --out " + csv_path.string());
        CHECK(run.exit_code == 0);
        const std::string csv = read_text(csv_path);
        REQUIRE(csv.rfind("theta_deg,theta_rad,height_m,actuator_length_m,dh_dl,force_n,"
                          "singular\n",
                          0) == 0);
        int rows = -1;  // discount the header
        for (char ch : csv) {
            if (ch == '\n') ++rows;
        }
        CHECK(rows == 5);
        // all force cells identical
        std::string first_force;
        std::size_t line_start = csv.find('\n') + 1;
        while (line_start < csv.size()) {
            const std::string line =
                csv.substr(line_start, csv.find('\n', line_start) - line_start);
            std::size_t pos = 0;
            for (int cell = 0; cell < 5; ++cell) pos = line.find(',', pos) + 1;
            const std::string force_cell = line.substr(pos, line.rfind(',') - pos);
            if (first_force.empty()) {
                first_force = force_cell;
            } else {
                CHECK(force_cell == first_force);
            }
            line_start += line.size() + 1;
        }
    }
    SECTION("csv and json agree on values") {
        REQUIRE(run_cli("sweep --config " + config.string() +
                        " --samples 7 --format csv --out " + csv_path.string())
                    .exit_code == 0);
        REQUIRE(run_cli("sweep --config " + config.string() +
                        " --samples 7 --format json --out " + json_path.string())
                    .exit_code == 0);
        const auto parsed = nlohmann::json::parse(read_text(json_path));
        REQUIRE(parsed.size() == 7);
        const std::string csv = read_text(csv_path);
        std::size_t line_start = csv.find('\n') + 1;
        for (const auto& obj : parsed) {
            const std::string line =
                csv.substr(line_start, csv.find('\n', line_start) - line_start);
            line_start += line.size() + 1;
            CHECK(std::strtod(line.c_str(), nullptr) == obj["theta_deg"].get<double>());
        }
    }
    SECTION("svg renders and avoids non-finite text") {
        const auto run = run_cli("sweep --config " + config.string() +
                                 " --samples 33 --format svg --out " + svg_path.string());
        CHECK(run.exit_code == 0);
        const std::string svg = read_text(svg_path);
        CHECK(svg.find("<svg") == 0);
        CHECK(svg.find("nan") == std::string::npos);
        CHECK(svg.find("NaN") == std::string::npos);
        CHECK(svg.find("inf") == std::string::npos);
    }
    SECTION("sweep across the degenerate angle flags the row") {
        const fs::path crossing = work_dir() / "crossing.json";
        write_text(crossing, R"({
  "lift": {"stages": 1, "arm_length_m": 1.0, "lift_weight_n": 0.0, "load_n": 50.0},
  "placement": {"a": 0.0, "b": 0.9, "i": 0, "slope": "negative"},
  "domain": {"theta_lo_deg": 25.841932763167129, "theta_hi_deg": 45.841932763167129}
})");
        const auto run = run_cli("sweep --config " + crossing.string() +
                                 " --samples 5 --format csv --out " + csv_path.string());
        CHECK(run.exit_code == 0);
        const std::string csv = read_text(csv_path);
        const std::size_t first_row = csv.find('\n') + 1;
        const std::string row = csv.substr(first_row, csv.find('\n', first_row) - first_row);
        CHECK(row.find(",,,") != std::string::npos);  // empty dh_dl and force_n
        CHECK(row.substr(row.size() - 4) == "true");
        std::string lowered = csv;
        for (char& ch : lowered) ch = static_cast<char>(std::tolower(ch));
        CHECK(lowered.find("nan") == std::string::npos);
        CHECK(lowered.find("inf") == std::string::npos);
    }
    SECTION("bad sample count") {
        const auto run = run_cli("sweep --config " + config.string() +
                                 " --samples 1 --format csv --out " + csv_path.string());
        CHECK(run.exit_code == 1);
    }
    SECTION("unwritable output path") {
        const auto run = run_cli("sweep --config " + config.string() +
                                 " --samples 5 --format csv --out /nonexistent_dir/out.csv");
        CHECK(run.exit_code == 1);
    }
}

TEST_CASE("optimize writes a ranked report") {
    const fs::path config = work_dir() / "optimize.json";
    write_text(config, R"({
  "lift": {"stages": 2, "arm_length_m": 1.0, "lift_weight_n": 0.0, "load_n": 100.0},
  "placement": {"a": 0.0, "b": 2.0, "i": 0, "slope": "negative"},
  "domain": {"theta_lo_deg": 20.0, "theta_hi_deg": 70.0},
  "search": {
    "objective": {"type": "min_peak_force"},
    "grids": {"candidates": [
      {"a": 0.0, "b": 2.0, "i": 0, "slope": "negative"},
      {"a": 0.0, "b": 0.0, "i": 1, "slope": "positive"}
    ]}
  }
})");
    const fs::path report_path = work_dir() / "report.json";

    SECTION("best is the vertical placement; repeated runs are byte identical") {
        const auto run = run_cli("optimize --config " + config.string() + " --out " +
                                 report_path.string());
        CHECK(run.exit_code == 0);
        const std::string first = read_text(report_path);
        const auto parsed = nlohmann::json::parse(first);
        CHECK(parsed["best"]["i"].get<int>() == 1);
        CHECK(parsed["best"]["slope"] == "positive");
        CHECK(parsed["best"]["objective"].get<double>() ==
              Catch::Approx(200.0).epsilon(1e-9));
        REQUIRE(parsed["ranked"].size() == 2);

        REQUIRE(run_cli("optimize --config " + config.string() + " --out " +
                        report_path.string())
                    .exit_code == 0);
        CHECK(read_text(report_path) == first);
    }
    SECTION("infeasible everywhere exits 3 with best null") {
        const fs::path strict = work_dir() / "optimize_strict.json";
        std::string text = read_text(config);
        text.replace(text.find("\"grids\""), 7,
                     "\"constraints\": {\"max_force_n\": 100.0},\n    \"grids\"");
        write_text(strict, text);
        const auto run = run_cli("optimize --config " + strict.string() + " --out " +
                                 report_path.string());
        CHECK(run.exit_code == 3);
        const auto parsed = nlohmann::json::parse(read_text(report_path));
        CHECK(parsed["best"].is_null());
    }
    SECTION("missing search section") {
        const auto run = run_cli("optimize --config " + screw_jack_config().string() +
                                 " --out " + report_path.string());
        CHECK(run.exit_code == 1);
        CHECK(run.err.find("search") != std::string::npos);
    }
}

TEST_CASE("verify runs the oracle suites") {
    const auto config = screw_jack_config();

    SECTION("small seeded run passes and is reproducible") {
        const std::string args = "verify --config " + config.string() +
                                 " --trials 50 --seed 7";
        const auto first = run_cli(args);
        CHECK(first.exit_code == 0);
        CHECK(first.out.find("oracle-length") != std::string::npos);
        CHECK(first.out.find("fd-derivative") != std::string::npos);
        CHECK(first.out.find("energy-residual") != std::string::npos);
        CHECK(first.out.find("PASS") != std::string::npos);

        const auto second = run_cli(args);
        CHECK(second.exit_code == 0);
        CHECK(second.out == first.out);
    }
    SECTION("zero trials is invalid input") {
        const auto run = run_cli("verify --config " + config.string() + " --trials 0");
        CHECK(run.exit_code == 1);
    }
}
