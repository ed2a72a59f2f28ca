#pragma once

#include "wigner/states.hpp"

#include <vector>

namespace wigner {

struct Rectangle {
    double q_min = 0.0, q_max = 0.0, p_min = 0.0, p_max = 0.0;
    double q_width() const { return q_max - q_min; }
    double p_width() const { return p_max - p_min; }
};

// Truncation and convergence policy for the negativity quadrature.
struct QuadratureConfig {
    double padding = 6.0;        // extra half-width beyond the support estimate
    int base_cells_per_unit = 16;
    int max_refinements = 6;     // cell-doubling steps on the ladder
    double tolerance = 1e-4;     // absolute target on successive delta estimates
};

// Uniform rectangular sampling of W, endpoints included, row-major in q.
struct PhaseGrid {
    double q_min = 0.0, q_max = 0.0, p_min = 0.0, p_max = 0.0;
    int nq = 0, np = 0;  // node counts per axis, >= 2
    std::vector<double> values;

    double value(int i, int j) const { return values[static_cast<std::size_t>(i) * np + j]; }
    double dq() const { return (q_max - q_min) / (nq - 1); }
    double dp() const { return (p_max - p_min) / (np - 1); }
};

struct NegativityResult {
    double delta = 0.0;           // doubled negative volume, 2 * i_minus
    double nu = 0.0;              // delta / (1 + delta)
    double i_plus = 0.0;
    double i_minus = 0.0;
    double error_estimate = 0.0;  // |last - previous| on the refinement ladder
    Rectangle domain;
    int resolution_q = 0, resolution_p = 0;  // cells per axis at the final rung
    bool converged = false;
};

// Rectangle holding all but a negligible (< 1e-10) fraction of |W| mass:
// classical radius sqrt(2n+1), stretched by e^|s| on both axes (a rotated
// squeeze can elongate either one), plus the padding; cats get their full
// +-q0 span.
Rectangle support_rectangle(const StateSpec& spec, double padding);

PhaseGrid evaluate_grid(const StateSpec& spec, const Rectangle& rect, int nq, int np);

// delta = integral |W| dq dp - 1, by composite 2D trapezoid over the support
// rectangle with cell doubling until two successive estimates agree to the
// configured tolerance. Row sums are accumulated in fixed index order, so
// results are bitwise independent of the worker partitioning.
NegativityResult delta_indicator(const StateSpec& spec, const QuadratureConfig& config = {});

// nu = delta / (1 + delta); throws std::domain_error for delta < 0.
double nu_from_delta(double delta);

// Inverse map, delta = nu / (1 - nu) for nu in [0, 1).
double delta_from_nu(double nu);

// Trapezoid integral of the stored samples (normalization checks).
double trapezoid_mass(const PhaseGrid& grid);

double max_abs(const PhaseGrid& grid);

}  // namespace wigner
