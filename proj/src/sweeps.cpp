#include "wigner/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wigner {

namespace {

// Deadband multiple of the quadrature tolerance below which a first
// difference counts as flat. Ladder jitter between neighbouring scan points
// stays within about one tolerance; real oscillation slopes in the scans of
// interest sit one to two orders above it.
constexpr double kDeadbandFactor = 4.0;

struct ParamRef {
    double* real = nullptr;
    int* order = nullptr;
};

ParamRef find_param(StateSpec& spec, const std::string& name) {
    return std::visit([&](auto& st) -> ParamRef {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            if (name == "n") return {nullptr, &st.n};
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            if (name == "q0") return {&st.q0, nullptr};
            if (name == "p0") return {&st.p0, nullptr};
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            if (name == "s") return {&st.s, nullptr};
            if (name == "phi") return {&st.phi, nullptr};
            if (name == "q0") return {&st.q0, nullptr};
            if (name == "p0") return {&st.p0, nullptr};
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            if (name == "n") return {nullptr, &st.n};
            if (name == "s") return {&st.s, nullptr};
            if (name == "phi") return {&st.phi, nullptr};
            if (name == "q0") return {&st.q0, nullptr};
            if (name == "p0") return {&st.p0, nullptr};
        } else {
            if (name == "q0") return {&st.q0, nullptr};
            if (name == "p0") return {&st.p0, nullptr};
        }
        return {};
    }, spec);
}

}  // namespace

bool state_has_param(const StateSpec& spec, const std::string& name) {
    StateSpec copy = spec;
    const ParamRef ref = find_param(copy, name);
    return ref.real != nullptr || ref.order != nullptr;
}

void set_state_param(StateSpec& spec, const std::string& name, double value) {
    const ParamRef ref = find_param(spec, name);
    if (ref.real != nullptr) {
        *ref.real = value;
        return;
    }
    if (ref.order != nullptr) {
        const double rounded = std::round(value);
        if (!std::isfinite(value) || std::abs(value - rounded) > 1e-9 || rounded < 0.0) {
            throw std::invalid_argument("sweep: parameter n must be a nonnegative integer, got " +
                                        std::to_string(value));
        }
        *ref.order = static_cast<int>(rounded);
        return;
    }
    throw std::invalid_argument("sweep: state family '" + state_family_name(spec) +
                                "' has no parameter '" + name + "'");
}

std::vector<Extremum> detect_extrema(const std::vector<SweepRecord>& records,
                                     double deadband) {
    std::vector<Extremum> extrema;
    const std::size_t m = records.size();
    if (m < 3) return extrema;

    // Significant first differences only; runs inside the deadband are flat.
    std::vector<std::pair<std::size_t, int>> moves;  // (difference index, sign)
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double d = records[i + 1].delta - records[i].delta;
        if (std::abs(d) > deadband) moves.emplace_back(i, d > 0.0 ? 1 : -1);
    }

    const auto refine = [&](std::size_t k, ExtremumKind kind) {
        const double x0 = records[k - 1].param, x1 = records[k].param, x2 = records[k + 1].param;
        const double y0 = records[k - 1].delta, y1 = records[k].delta, y2 = records[k + 1].delta;
        const double h = 0.5 * (x2 - x0);
        const double denom = y0 - 2.0 * y1 + y2;
        double loc = x1, val = y1;
        if (denom != 0.0) {
            const double shift = 0.5 * h * (y0 - y2) / denom;
            if (std::abs(shift) <= std::abs(h)) {
                loc = x1 + shift;
                // parabola vertex value
                val = y1 - 0.25 * (y0 - y2) * shift / h;
            }
        }
        extrema.push_back({loc, val, kind});
    };

    for (std::size_t t = 0; t + 1 < moves.size(); ++t) {
        const auto [i_up, s_up] = moves[t];
        const auto [i_dn, s_dn] = moves[t + 1];
        if (s_up == s_dn) continue;
        // Peak (or trough) lies between the two significant slopes.
        std::size_t k = i_up + 1;
        for (std::size_t j = i_up + 1; j <= i_dn; ++j) {
            const bool better = s_up > 0 ? records[j].delta > records[k].delta
                                         : records[j].delta < records[k].delta;
            if (better) k = j;
        }
        if (k == 0 || k + 1 >= m) continue;
        refine(k, s_up > 0 ? ExtremumKind::maximum : ExtremumKind::minimum);
    }
    return extrema;
}

std::optional<double> estimate_period(const std::vector<Extremum>& extrema) {
    std::vector<double> maxima;
    for (const Extremum& e : extrema) {
        if (e.kind == ExtremumKind::maximum) maxima.push_back(e.location);
    }
    if (maxima.size() < 3) return std::nullopt;
    std::sort(maxima.begin(), maxima.end());
    double spacing = 0.0;
    for (std::size_t i = 0; i + 1 < maxima.size(); ++i) spacing += maxima[i + 1] - maxima[i];
    return spacing / static_cast<double>(maxima.size() - 1);
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (!(spec.varied.step > 0.0)) {
        throw std::invalid_argument("sweep: step must be positive");
    }
    if (!(spec.varied.start < spec.varied.stop)) {
        throw std::invalid_argument("sweep: start must be below stop");
    }
    if (!state_has_param(spec.family, spec.varied.name)) {
        throw std::invalid_argument("sweep: state family '" + state_family_name(spec.family) +
                                    "' has no parameter '" + spec.varied.name + "'");
    }
    const auto n_points = static_cast<std::size_t>(
        std::floor((spec.varied.stop - spec.varied.start) / spec.varied.step + 1e-9)) + 1;
    if (n_points < 8) {
        throw std::invalid_argument("sweep: need at least 8 scan points, got " +
                                    std::to_string(n_points));
    }

    StateSpec base = spec.family;
    for (const auto& [name, value] : spec.fixed) set_state_param(base, name, value);

    SweepResult result;
    result.records.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double value = spec.varied.start + static_cast<double>(i) * spec.varied.step;
        StateSpec point = base;
        set_state_param(point, spec.varied.name, value);
        validate_state(point);
        const NegativityResult neg = delta_indicator(point, spec.quad);
        result.records.push_back({value, neg.delta, neg.nu, neg.error_estimate, neg.converged});
    }

    result.extrema = detect_extrema(result.records, kDeadbandFactor * spec.quad.tolerance);
    if (spec.varied.name == "p0") {
        result.period_estimate = estimate_period(result.extrema);
    }
    return result;
}

SweepResult fock_scan(int n_max, const QuadratureConfig& quad) {
    if (n_max < 1) {
        throw std::invalid_argument("fock_scan: n_max must be >= 1");
    }
    SweepResult result;
    result.records.reserve(static_cast<std::size_t>(n_max) + 1);
    result.monotone_increasing = true;
    double max_rel_dev = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const NegativityResult neg = delta_indicator(FockState{n}, quad);
        result.records.push_back({static_cast<double>(n), neg.delta, neg.nu,
                                  neg.error_estimate, neg.converged});
        if (n >= 1) {
            if (result.records[static_cast<std::size_t>(n)].delta <=
                result.records[static_cast<std::size_t>(n) - 1].delta) {
                result.monotone_increasing = false;
            }
            const double fit = 0.5 * std::sqrt(static_cast<double>(n));
            max_rel_dev = std::max(max_rel_dev, std::abs(neg.delta / fit - 1.0));
        }
    }
    result.max_rel_dev_from_half_sqrt_n = max_rel_dev;
    result.extrema = detect_extrema(result.records, kDeadbandFactor * quad.tolerance);
    return result;
}

}  // namespace wigner
