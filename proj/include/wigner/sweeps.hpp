#pragma once

#include "wigner/negativity.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wigner {

struct SweepAxis {
    std::string name;  // q0, p0, s, phi or n, where the family has it
    double start = 0.0, stop = 0.0, step = 0.0;
};

struct SweepSpec {
    StateSpec family;
    SweepAxis varied;
    std::vector<std::pair<std::string, double>> fixed;
    QuadratureConfig quad;
};

struct SweepRecord {
    double param = 0.0;
    double delta = 0.0;
    double nu = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

enum class ExtremumKind { maximum, minimum };

struct Extremum {
    double location = 0.0;  // parabola-refined, strictly inside the scan
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::maximum;
};

struct SweepResult {
    std::vector<SweepRecord> records;  // ordered by parameter
    std::vector<Extremum> extrema;
    std::optional<double> period_estimate;  // momentum scans, >= 3 maxima

    // fock_scan extras
    bool monotone_increasing = false;
    std::optional<double> max_rel_dev_from_half_sqrt_n;
};

bool state_has_param(const StateSpec& spec, const std::string& name);

// Throws std::invalid_argument for unknown names or bad values (n must be a
// nonnegative integer).
void set_state_param(StateSpec& spec, const std::string& name, double value);

// One delta_indicator call per scan point. Non-convergence is recorded on
// the affected record and the sweep continues. Needs >= 8 points; extrema
// come from first-difference sign changes with a deadband of a few times the
// quadrature tolerance so ladder jitter does not register as structure.
SweepResult run_sweep(const SweepSpec& spec);

// delta(|n>) for n = 0..n_max, with the monotonicity flag and the measured
// envelope of delta(n) / (sqrt(n)/2) over n >= 1.
SweepResult fock_scan(int n_max, const QuadratureConfig& quad = {});

// Exposed pieces of the detector, also used directly on synthetic records.
std::vector<Extremum> detect_extrema(const std::vector<SweepRecord>& records,
                                     double deadband);
std::optional<double> estimate_period(const std::vector<Extremum>& extrema);

}  // namespace wigner
