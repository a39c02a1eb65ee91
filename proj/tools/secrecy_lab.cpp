// secrecy_lab: command-line front end for the secrecy library.
//
// Exit status:
//   0   success
//   64  usage error (bad flags, missing required option)
//   65  invalid input data (malformed or inconsistent scenario)
//   66  scenario file not found or unreadable
//   70  numerical failure (solver could not converge)
//   73  report could not be written

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "secrecy/secrecy.hpp"

namespace {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 64,
    exit_data = 65,
    exit_no_input = 66,
    exit_numerical = 70,
    exit_cant_create = 73,
};

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv("SECRECY_LAB_SEED");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (errno != 0 || *end != '\0' || raw[0] == '-')
        throw secrecy::UsageError(std::string("SECRECY_LAB_SEED is not an unsigned integer: ") + raw);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy capacity, power allocation and cooperative pairing experiments"};
    app.footer(
        "Commands: rate, allocate, allocate-fading, ergodic, pair, discrete-capacity, pick-prob, fig4.\n"
        "--budget is the total transmit power sum_i P_i for allocate, the average power E[P] for\n"
        "allocate-fading/ergodic, and the per-link transmit power for rate (default 1).\n"
        "Seed precedence: --seed, then SECRECY_LAB_SEED, then the scenario's \"seed\".\n"
        "fig4 uses the bundled reference scenario unless --scenario is given.\n"
        "Exit codes: 0 ok, 64 usage, 65 invalid data, 66 missing scenario, 70 numerical failure,\n"
        "73 output not writable.");

    std::string command;
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<double> budget;
    double grid_step = 0.01;
    std::string format = "csv";
    std::string out_path = "-";
    std::string curves_path;

    app.add_option("command", command, "Experiment to run")
        ->required()
        ->check(CLI::IsMember({"rate", "allocate", "allocate-fading", "ergodic", "pair", "discrete-capacity",
                               "pick-prob", "fig4"}));
    app.add_option("--scenario", scenario_path, "Scenario file (JSON)");
    app.add_option("--seed", seed, "Master random seed");
    app.add_option("--samples", samples, "Monte Carlo samples (default 100000)")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget, "Power budget")->check(CLI::PositiveNumber);
    app.add_option("--grid-step", grid_step, "Input-law grid step for discrete-capacity")->capture_default_str();
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", out_path, "Report path, - for stdout")->capture_default_str();
    app.add_option("--curves", curves_path, "fig4 only: write efficiency curves CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        const auto cmd = *secrecy::parse_command(command);
        if (!curves_path.empty() && cmd != secrecy::Command::fig4)
            throw secrecy::UsageError("--curves is only valid with fig4");
        secrecy::Scenario scenario;
        if (!scenario_path.empty())
            scenario = secrecy::load_scenario(scenario_path);
        else if (cmd == secrecy::Command::fig4)
            scenario = secrecy::fig4_scenario();
        else
            throw secrecy::UsageError(command + " requires --scenario");

        secrecy::RunOptions options;
        options.budget = budget;
        options.samples = samples;
        options.grid_step = grid_step;
        if (seed)
            options.seed = *seed;
        else if (auto env = seed_from_env())
            options.seed = *env;
        else
            options.seed = scenario.seed;

        const auto records = secrecy::run(cmd, scenario, options);
        secrecy::emit(records, format == "json" ? secrecy::ReportFormat::json : secrecy::ReportFormat::csv, out_path);

        if (!curves_path.empty()) {
            std::ofstream curves(curves_path, std::ios::binary | std::ios::trunc);
            if (!curves) throw secrecy::ReportWriteError("cannot write curves to " + curves_path);
            curves << secrecy::render_curves_csv(secrecy::fig4_curves(scenario));
            if (!curves.flush()) throw secrecy::ReportWriteError("failed writing curves to " + curves_path);
        }
        return exit_ok;
    } catch (const secrecy::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const secrecy::ScenarioFileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_no_input;
    } catch (const secrecy::ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return exit_data;
    } catch (const secrecy::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const secrecy::ReportWriteError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_cant_create;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_data;
    } catch (const std::length_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_data;
    }
}
