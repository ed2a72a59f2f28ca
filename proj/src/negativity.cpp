#include "wigner/negativity.hpp"

#include "wigner/parallel.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wigner {

namespace {

void validate_config(const QuadratureConfig& cfg) {
    if (!(cfg.padding >= 0.0)) {
        throw std::invalid_argument("quadrature: padding must be >= 0");
    }
    if (cfg.base_cells_per_unit < 1) {
        throw std::invalid_argument("quadrature: base_cells_per_unit must be positive");
    }
    if (cfg.max_refinements < 1 || cfg.max_refinements > 24) {
        throw std::invalid_argument("quadrature: max_refinements must be in [1, 24]");
    }
    if (!(cfg.tolerance > 0.0)) {
        throw std::invalid_argument("quadrature: tolerance must be positive");
    }
}

std::vector<double> axis_nodes(double lo, double hi, int cells) {
    std::vector<double> nodes(static_cast<std::size_t>(cells) + 1);
    const double h = (hi - lo) / cells;
    for (int j = 0; j <= cells; ++j) nodes[static_cast<std::size_t>(j)] = lo + j * h;
    return nodes;
}

struct GridSums {
    double abs_mass = 0.0;
    double signed_mass = 0.0;
};

// Composite trapezoid of |W| and W over ncq x ncp cells. Each row's inner
// sum runs in ascending j; rows land in preassigned slots and are reduced
// sequentially, keeping the totals independent of the thread partition.
GridSums integrate_abs_and_signed(const StateSpec& spec, const Rectangle& rect,
                                  int ncq, int ncp) {
    const int nq = ncq + 1, np = ncp + 1;
    const double hq = rect.q_width() / ncq;
    const double hp = rect.p_width() / ncp;
    const WignerRowEvaluator eval(spec, axis_nodes(rect.p_min, rect.p_max, ncp));

    std::vector<double> row_abs(static_cast<std::size_t>(nq));
    std::vector<double> row_signed(static_cast<std::size_t>(nq));
    parallel_chunks(static_cast<std::size_t>(nq), [&](std::size_t begin, std::size_t end) {
        std::vector<double> w(static_cast<std::size_t>(np));
        for (std::size_t i = begin; i < end; ++i) {
            eval.row(rect.q_min + static_cast<double>(i) * hq, w);
            double a = 0.5 * std::abs(w[0]);
            double s = 0.5 * w[0];
            for (int j = 1; j < np - 1; ++j) {
                a += std::abs(w[static_cast<std::size_t>(j)]);
                s += w[static_cast<std::size_t>(j)];
            }
            a += 0.5 * std::abs(w[static_cast<std::size_t>(np - 1)]);
            s += 0.5 * w[static_cast<std::size_t>(np - 1)];
            row_abs[i] = a;
            row_signed[i] = s;
        }
    });

    GridSums sums;
    for (int i = 0; i < nq; ++i) {
        const double wi = (i == 0 || i == nq - 1) ? 0.5 : 1.0;
        sums.abs_mass += wi * row_abs[static_cast<std::size_t>(i)];
        sums.signed_mass += wi * row_signed[static_cast<std::size_t>(i)];
    }
    sums.abs_mass *= hq * hp;
    sums.signed_mass *= hq * hp;
    return sums;
}

// Snap an interval outward onto the base-cell lattice. Keeping the nodes on
// absolute lattice positions makes the quadrature bias vary smoothly along a
// parameter sweep; a rectangle that translates freely with the state would
// realign its cells against the interference fringes at every scan point and
// turn the alignment error into point-to-point jitter.
struct Axis {
    double lo = 0.0, hi = 0.0;
    int cells = 0;
};

Axis snap_axis(double lo, double hi, int cells_per_unit, int max_refinements) {
    Axis axis;
    axis.lo = std::floor(lo * cells_per_unit) / cells_per_unit;
    axis.hi = std::ceil(hi * cells_per_unit) / cells_per_unit;
    const auto cells = std::llround((axis.hi - axis.lo) * cells_per_unit);
    // deepest rung must stay addressable
    if ((cells << max_refinements) > (1LL << 28)) {
        throw std::invalid_argument(
            "quadrature: grid would exceed 2^28 cells per axis at the deepest "
            "refinement; shrink the domain, the base density or max_refinements");
    }
    axis.cells = static_cast<int>(cells);
    if (axis.cells < 2) {
        axis.cells = 2;
        axis.hi = axis.lo + 2.0 / cells_per_unit;
    }
    return axis;
}

}  // namespace

Rectangle support_rectangle(const StateSpec& spec, double padding) {
    if (!(padding >= 0.0)) {
        throw std::invalid_argument("support_rectangle: padding must be >= 0");
    }
    return std::visit([&](const auto& st) -> Rectangle {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            const double hw = std::sqrt(2.0 * st.n + 1.0) + padding;
            return {-hw, hw, -hw, hw};
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            const double hw = 1.0 + padding;
            return {st.q0 - hw, st.q0 + hw, st.p0 - hw, st.p0 + hw};
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            const double hw = std::exp(std::abs(st.s)) + padding;
            return {st.q0 - hw, st.q0 + hw, st.p0 - hw, st.p0 + hw};
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            const double hw = std::sqrt(2.0 * st.n + 1.0) * std::exp(std::abs(st.s)) + padding;
            return {st.q0 - hw, st.q0 + hw, st.p0 - hw, st.p0 + hw};
        } else {
            return {-st.q0 - padding, st.q0 + padding, st.p0 - padding, st.p0 + padding};
        }
    }, spec);
}

PhaseGrid evaluate_grid(const StateSpec& spec, const Rectangle& rect, int nq, int np) {
    if (nq < 2 || np < 2) {
        throw std::invalid_argument("evaluate_grid: need at least 2 nodes per axis");
    }
    if (!(rect.q_max > rect.q_min) || !(rect.p_max > rect.p_min)) {
        throw std::invalid_argument("evaluate_grid: empty rectangle");
    }
    PhaseGrid grid{rect.q_min, rect.q_max, rect.p_min, rect.p_max, nq, np, {}};
    grid.values.resize(static_cast<std::size_t>(nq) * np);
    const WignerRowEvaluator eval(spec, axis_nodes(rect.p_min, rect.p_max, np - 1));
    const double hq = grid.dq();
    parallel_chunks(static_cast<std::size_t>(nq), [&](std::size_t begin, std::size_t end) {
        std::vector<double> w(static_cast<std::size_t>(np));
        for (std::size_t i = begin; i < end; ++i) {
            eval.row(rect.q_min + static_cast<double>(i) * hq, w);
            std::copy(w.begin(), w.end(), grid.values.begin() + i * static_cast<std::size_t>(np));
        }
    });
    return grid;
}

NegativityResult delta_indicator(const StateSpec& spec, const QuadratureConfig& config) {
    validate_config(config);
    validate_state(spec);

    NegativityResult result;
    const Rectangle support = support_rectangle(spec, config.padding);

    // The base grid must resolve the finest structure the state carries or
    // the refinement ladder is not trustworthy: cat fringes go as
    // cos(2 p q0), and under-resolved fringes can hold the alignment error
    // nearly constant across two or three cell-halvings. 8 q0 cells per unit
    // gives ~25 nodes per fringe period before the first refinement.
    int cpu_p = config.base_cells_per_unit;
    if (const auto* cat = std::get_if<CatState>(&spec)) {
        const double fringe_cells = std::ceil(8.0 * cat->q0);
        if (fringe_cells > 1e7) {
            throw std::invalid_argument(
                "delta_indicator: cat separation too large to resolve its fringes");
        }
        cpu_p = std::max(cpu_p, static_cast<int>(fringe_cells));
    }

    const Axis q_axis = snap_axis(support.q_min, support.q_max, config.base_cells_per_unit,
                                  config.max_refinements);
    const Axis p_axis = snap_axis(support.p_min, support.p_max, cpu_p,
                                  config.max_refinements);
    result.domain = {q_axis.lo, q_axis.hi, p_axis.lo, p_axis.hi};
    const int ncq0 = q_axis.cells;
    const int ncp0 = p_axis.cells;

    double raw = 0.0, prev = 0.0;
    double diff = std::numeric_limits<double>::infinity();
    double prev_diff = std::numeric_limits<double>::infinity();
    GridSums sums;
    for (int rung = 0; rung <= config.max_refinements; ++rung) {
        result.resolution_q = ncq0 << rung;
        result.resolution_p = ncp0 << rung;
        sums = integrate_abs_and_signed(spec, result.domain, result.resolution_q,
                                        result.resolution_p);
        raw = sums.abs_mass - sums.signed_mass;  // 2 I_minus
        if (rung > 0) {
            prev_diff = diff;
            diff = std::abs(raw - prev);
            // A single small step is not convergence: the kink-alignment
            // error of |W| can coincide on two neighbouring rungs while both
            // still carry a large bias, so the previous step must look like a
            // second-order ladder too before the estimate is trusted.
            if (std::isfinite(prev_diff)) {
                result.error_estimate = std::max(diff, 0.25 * prev_diff);
                if (result.error_estimate < config.tolerance) {
                    result.converged = true;
                    break;
                }
            } else {
                result.error_estimate = diff;
            }
        }
        prev = raw;
    }

    // |W| >= W pointwise makes raw nonnegative up to roundoff; clamp the
    // stray ulps and keep them visible in the error estimate.
    if (raw < 0.0) {
        result.error_estimate = std::max(result.error_estimate, -raw);
        raw = 0.0;
    }
    result.i_minus = 0.5 * raw;
    result.i_plus = 0.5 * (sums.abs_mass + sums.signed_mass);
    result.delta = 2.0 * result.i_minus;
    result.nu = result.delta / (1.0 + result.delta);
    return result;
}

double nu_from_delta(double delta) {
    if (delta < 0.0) {
        throw std::domain_error("nu_from_delta: delta must be >= 0, got " +
                                std::to_string(delta));
    }
    return delta / (1.0 + delta);
}

double delta_from_nu(double nu) {
    if (nu < 0.0 || nu >= 1.0) {
        throw std::domain_error("delta_from_nu: nu must lie in [0, 1), got " +
                                std::to_string(nu));
    }
    return nu / (1.0 - nu);
}

double trapezoid_mass(const PhaseGrid& grid) {
    double total = 0.0;
    for (int i = 0; i < grid.nq; ++i) {
        const double wi = (i == 0 || i == grid.nq - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int j = 0; j < grid.np; ++j) {
            const double wj = (j == 0 || j == grid.np - 1) ? 0.5 : 1.0;
            row += wj * grid.value(i, j);
        }
        total += wi * row;
    }
    return total * grid.dq() * grid.dp();
}

double max_abs(const PhaseGrid& grid) {
    double m = 0.0;
    for (const double v : grid.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace wigner
