#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scissor/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"scissor-lift actuator force, stroke and placement analysis"};
    app.require_subcommand(1);

    std::string config_path;
    double theta_deg = 0.0;
    int samples = 101;
    std::string format = "csv";
    std::string out_path;
    int trials = 1000;
    std::uint64_t seed = 42;

    auto* analyze = app.add_subcommand("analyze", "evaluate one operating angle");
    analyze->add_option("--config", config_path, "JSON config file")->required();
    analyze->add_option("--theta-deg", theta_deg, "arm angle in degrees, open (0, 90)")
        ->required();

    auto* sweep = app.add_subcommand("sweep", "evaluate a uniform angle grid");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--samples", samples, "grid points incl. endpoints (default 101)");
    sweep->add_option("--format", format, "csv|json|svg (default csv)");
    sweep->add_option("--out", out_path, "output file path")->required();

    auto* optimize = app.add_subcommand("optimize", "rank candidate placements");
    optimize->add_option("--config", config_path, "JSON config file with a search section")
        ->required();
    optimize->add_option("--out", out_path, "report file path")->required();

    auto* verify = app.add_subcommand("verify", "randomized oracle cross-checks");
    verify->add_option("--config", config_path, "JSON config file")->required();
    verify->add_option("--trials", trials, "samples per suite (default 1000)");
    verify->add_option("--seed", seed, "RNG seed (default 42)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return scissor::cli::exit_invalid_input;
    }

    if (app.got_subcommand(analyze)) {
        return scissor::cli::cmd_analyze(config_path, theta_deg, std::cout, std::cerr);
    }
    if (app.got_subcommand(sweep)) {
        return scissor::cli::cmd_sweep(config_path, samples, format, out_path, std::cerr);
    }
    if (app.got_subcommand(optimize)) {
        return scissor::cli::cmd_optimize(config_path, out_path, std::cout, std::cerr);
    }
    if (app.got_subcommand(verify)) {
        return scissor::cli::cmd_verify(config_path, trials, seed, std::cout, std::cerr);
    }
    return scissor::cli::exit_invalid_input;
}
