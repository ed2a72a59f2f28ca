#pragma once

#include "wigner/negativity.hpp"
#include "wigner/sweeps.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wigner {

enum class Command { eval, delta, sweep, fock_scan, validate };

enum class OutputFormat { json, csv, matrix };

struct RunConfig {
    Command command = Command::delta;
    std::string state_text;  // as given on the command line
    StateSpec state;
    QuadratureConfig quad;
    OutputFormat format = OutputFormat::json;
    std::string out_path;  // empty -> stdout
    std::optional<std::string> plot_path;

    // eval
    int nq = 201, np = 201;
    std::optional<Rectangle> window;

    // sweep
    SweepAxis vary;
    std::vector<std::pair<std::string, double>> fixed;

    // fock-scan
    int n_max = 4;
};

struct ParseResult {
    enum class Action { run, help, usage_error };
    Action action = Action::usage_error;
    RunConfig config;
    std::string message;  // help text or one-line diagnostic
};

// Deterministic argv parse (argv excludes the program name). Never exits;
// malformed input comes back as usage_error with the offending token named.
ParseResult parse_args(const std::vector<std::string>& args);

// Canonical command line for a parsed config; parse_args(to_argv(c)) is
// equivalent to c.
std::vector<std::string> to_argv(const RunConfig& config);

// %.9g, enough for the seven significant digits the delta values carry.
std::string format_g9(double v);

void write_negativity_json(const NegativityResult& result, std::ostream& out);

// Columns exactly: param,delta,nu,error_estimate
void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_sweep_json(const SweepResult& result, std::ostream& out);

// Two-line header (# q: qmin qmax nq / # p: pmin pmax np), then an nq x np
// whitespace-separated value matrix, one q-row per line.
void write_grid_matrix(const PhaseGrid& grid, std::ostream& out);
void write_grid_csv(const PhaseGrid& grid, std::ostream& out);
void write_grid_json(const PhaseGrid& grid, std::ostream& out);

// gnuplot companions for the emitted data files.
void write_sweep_plot_script(const std::string& data_path, const std::string& varied,
                             bool with_half_sqrt_fit, std::ostream& out);
void write_grid_plot_script(const PhaseGrid& grid, const std::string& data_path,
                            std::ostream& out);

// Executes a parsed command. Results go to config.out_path (or `out` when no
// path is set); progress/diagnostics go to `err`. Returns the process exit
// code: 0 ok, 1 failed checks or non-convergence, 2 usage errors caught here.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace wigner
