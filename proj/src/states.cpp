#include "wigner/states.hpp"

#include "wigner/special_fn.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

namespace wigner {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPi = 1.0 / kPi;

void require_finite(double v, const char* name, const char* family) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(family) + ": parameter " + name +
                                    " must be finite");
    }
}

}  // namespace

void validate_state(const StateSpec& spec) {
    std::visit([](const auto& st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            if (st.n < 0) throw std::invalid_argument("fock: n must be >= 0");
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            require_finite(st.q0, "q0", "coherent");
            require_finite(st.p0, "p0", "coherent");
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            require_finite(st.s, "s", "sqvac");
            require_finite(st.phi, "phi", "sqvac");
            require_finite(st.q0, "q0", "sqvac");
            require_finite(st.p0, "p0", "sqvac");
            if (st.s < 0.0) throw std::invalid_argument("sqvac: s must be >= 0");
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            if (st.n < 0) throw std::invalid_argument("sdf: n must be >= 0");
            require_finite(st.s, "s", "sdf");
            require_finite(st.phi, "phi", "sdf");
            require_finite(st.q0, "q0", "sdf");
            require_finite(st.p0, "p0", "sdf");
            if (st.s < 0.0) throw std::invalid_argument("sdf: s must be >= 0");
        } else {
            require_finite(st.q0, "q0", "cat");
            require_finite(st.p0, "p0", "cat");
            if (st.q0 < 0.0) throw std::invalid_argument("cat: q0 must be >= 0");
        }
    }, spec);
}

// ---- Wigner evaluators -----------------------------------------------------

double wigner_fock(int n, double q, double p) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * kInvPi * weighted_laguerre(n, 2.0 * (q * q + p * p));
}

double wigner_sdf(const SqueezedDisplacedFockState& st, double q, double p) {
    // b = cosh(s)(alpha* - beta*) + e^(-i phi) sinh(s)(alpha - beta) with
    // alpha = (q + ip)/sqrt(2), beta = (q0 + ip0)/sqrt(2). Writing
    // sqrt(2) b = u + iv gives 4|b|^2 = 2(u^2 + v^2).
    const double dq = q - st.q0;
    const double dp = p - st.p0;
    const double ch = std::cosh(st.s), sh = std::sinh(st.s);
    const double cph = std::cos(st.phi), sph = std::sin(st.phi);
    const double u = (ch + sh * cph) * dq + sh * sph * dp;
    const double v = (sh * cph - ch) * dp - sh * sph * dq;
    const double sign = (st.n % 2 == 0) ? 1.0 : -1.0;
    return sign * kInvPi * weighted_laguerre(st.n, 2.0 * (u * u + v * v));
}

double wigner_squeezed_vacuum(const SqueezedVacuumState& st, double q, double p) {
    if (st.phi != 0.0) {
        throw std::invalid_argument(
            "wigner_squeezed_vacuum: closed Gaussian form holds for phi = 0 only; "
            "use wigner_sdf for phi != 0");
    }
    const double dq = q - st.q0;
    const double dp = p - st.p0;
    const double e2s = std::exp(2.0 * st.s);
    return kInvPi * std::exp(-e2s * dq * dq - dp * dp / e2s);
}

CatNormalization cat_normalization(double q0, double p0) {
    const double radicand = 1.0 + std::cos(2.0 * p0 * q0) * std::exp(-q0 * q0);
    if (radicand <= 0.0) {
        throw std::domain_error("cat_normalization: degenerate superposition, "
                                "1 + cos(2 p0 q0) exp(-q0^2) <= 0");
    }
    return CatNormalization{q0, p0, 1.0 / std::sqrt(radicand)};
}

double wigner_cat(double q0, double p0, double q, double p) {
    const double nsq = [&] {
        const CatNormalization c = cat_normalization(q0, p0);
        return c.norm * c.norm;
    }();
    const double dpp = p - p0;
    const double qm = q - q0, qp = q + q0;
    const double peaks = (nsq / (2.0 * kPi)) *
                         (std::exp(-qp * qp - dpp * dpp) + std::exp(-qm * qm - dpp * dpp));
    const double fringe = (nsq / kPi) * std::cos(2.0 * p * q0) *
                          std::exp(-q * q - dpp * dpp);
    return peaks + fringe;
}

double wigner_value(const StateSpec& spec, double q, double p) {
    return std::visit([&](const auto& st) -> double {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            return wigner_fock(st.n, q, p);
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            const double dq = q - st.q0, dp = p - st.p0;
            return kInvPi * std::exp(-dq * dq - dp * dp);
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            if (st.phi == 0.0) return wigner_squeezed_vacuum(st, q, p);
            return wigner_sdf({0, st.s, st.phi, st.q0, st.p0}, q, p);
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            return wigner_sdf(st, q, p);
        } else {
            return wigner_cat(st.q0, st.p0, q, p);
        }
    }, spec);
}

// ---- wavefunctions ----------------------------------------------------------

double hermite_function(int n, double q) {
    if (n < 0) throw std::domain_error("hermite_function: n must be >= 0");
    double hprev = std::pow(kPi, -0.25) * std::exp(-0.5 * q * q);
    if (n == 0) return hprev;
    double hcur = std::sqrt(2.0) * q * hprev;
    for (int k = 1; k < n; ++k) {
        const double hnext = std::sqrt(2.0 / (k + 1.0)) * q * hcur -
                             std::sqrt(k / (k + 1.0)) * hprev;
        hprev = hcur;
        hcur = hnext;
    }
    return hcur;
}

bool has_wavefunction(const StateSpec& spec) {
    if (const auto* sdf = std::get_if<SqueezedDisplacedFockState>(&spec)) {
        return sdf->phi == 0.0;
    }
    if (const auto* sv = std::get_if<SqueezedVacuumState>(&spec)) {
        return sv->phi == 0.0;
    }
    return true;
}

std::complex<double> wavefunction(const StateSpec& spec, double q) {
    using namespace std::complex_literals;
    return std::visit([&](const auto& st) -> std::complex<double> {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            return hermite_function(st.n, q);
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            const double dq = q - st.q0;
            return std::pow(kPi, -0.25) * std::exp(-0.5 * dq * dq) *
                   std::exp(1i * st.p0 * dq);
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            if (st.phi != 0.0) {
                throw std::invalid_argument(
                    "wavefunction: squeezed states with phi != 0 have no "
                    "wavefunction path");
            }
            const double dq = q - st.q0;
            // dilated ground state, center fixed by the displacement
            return std::exp(0.5 * st.s) * hermite_function(0, std::exp(st.s) * dq) *
                   std::exp(1i * st.p0 * dq);
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            if (st.phi != 0.0) {
                throw std::invalid_argument(
                    "wavefunction: squeezed displaced Fock states with phi != 0 "
                    "have no wavefunction path");
            }
            const double dq = q - st.q0;
            return std::exp(0.5 * st.s) *
                   hermite_function(st.n, std::exp(st.s) * dq) *
                   std::exp(1i * st.p0 * dq);
        } else {
            // (norm/sqrt2) (phi_plus + phi_minus), packets at -+q0
            const CatNormalization c = cat_normalization(st.q0, st.p0);
            const double qp = q + st.q0, qm = q - st.q0;
            const std::complex<double> plus =
                std::exp(-0.5 * qp * qp) * std::exp(1i * st.p0 * qp);
            const std::complex<double> minus =
                std::exp(-0.5 * qm * qm) * std::exp(1i * st.p0 * qm);
            return c.norm / std::sqrt(2.0) * std::pow(kPi, -0.25) * (plus + minus);
        }
    }, spec);
}

// ---- grammar ----------------------------------------------------------------

namespace {

double parse_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("state: value for " + key + " is not a number: '" +
                                    text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("state: trailing characters in value for " + key +
                                    ": '" + text + "'");
    }
    return value;
}

int parse_order(const std::string& key, const std::string& text) {
    const double value = parse_real(key, text);
    const double rounded = std::round(value);
    if (!std::isfinite(value) || std::abs(value - rounded) > 1e-9 || rounded < 0.0 ||
        rounded > 1e9) {
        throw std::invalid_argument("state: " + key + " must be a nonnegative integer, got '" +
                                    text + "'");
    }
    return static_cast<int>(rounded);
}

std::map<std::string, std::string> parse_kv(const std::string& params) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos < params.size()) {
        std::size_t comma = params.find(',', pos);
        if (comma == std::string::npos) comma = params.size();
        const std::string item = params.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("state: expected key=value, got '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        if (kv.count(key)) {
            throw std::invalid_argument("state: duplicate key '" + key + "'");
        }
        kv[key] = item.substr(eq + 1);
    }
    return kv;
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> allowed,
                    const std::string& family) {
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) { ok = true; break; }
        }
        if (!ok) {
            throw std::invalid_argument("state: unknown key '" + key + "' for family '" +
                                        family + "'");
        }
    }
}

double get_real(const std::map<std::string, std::string>& kv, const char* key) {
    const auto it = kv.find(key);
    return it == kv.end() ? 0.0 : parse_real(key, it->second);
}

int get_order(const std::map<std::string, std::string>& kv, const char* key) {
    const auto it = kv.find(key);
    return it == kv.end() ? 0 : parse_order(key, it->second);
}

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

StateSpec parse_state_spec(const std::string& text) {
    const std::size_t colon = text.find(':');
    const std::string family = text.substr(0, colon);
    const std::string params = colon == std::string::npos ? "" : text.substr(colon + 1);
    const auto kv = parse_kv(params);

    StateSpec spec;
    if (family == "fock") {
        reject_unknown(kv, {"n"}, family);
        spec = FockState{get_order(kv, "n")};
    } else if (family == "coherent") {
        reject_unknown(kv, {"q0", "p0"}, family);
        spec = CoherentState{get_real(kv, "q0"), get_real(kv, "p0")};
    } else if (family == "sqvac") {
        reject_unknown(kv, {"s", "phi", "q0", "p0"}, family);
        spec = SqueezedVacuumState{get_real(kv, "s"), get_real(kv, "phi"),
                                   get_real(kv, "q0"), get_real(kv, "p0")};
    } else if (family == "sdf") {
        reject_unknown(kv, {"n", "s", "phi", "q0", "p0"}, family);
        spec = SqueezedDisplacedFockState{get_order(kv, "n"), get_real(kv, "s"),
                                          get_real(kv, "phi"), get_real(kv, "q0"),
                                          get_real(kv, "p0")};
    } else {
        if (family != "cat") {
            throw std::invalid_argument("state: unknown family '" + family + "'");
        }
        reject_unknown(kv, {"q0", "p0"}, family);
        spec = CatState{get_real(kv, "q0"), get_real(kv, "p0")};
    }
    validate_state(spec);
    return spec;
}

std::string format_state_spec(const StateSpec& spec) {
    return std::visit([](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            return "fock:n=" + std::to_string(st.n);
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            return "coherent:q0=" + g9(st.q0) + ",p0=" + g9(st.p0);
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            return "sqvac:s=" + g9(st.s) + ",phi=" + g9(st.phi) + ",q0=" + g9(st.q0) +
                   ",p0=" + g9(st.p0);
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            return "sdf:n=" + std::to_string(st.n) + ",s=" + g9(st.s) + ",phi=" +
                   g9(st.phi) + ",q0=" + g9(st.q0) + ",p0=" + g9(st.p0);
        } else {
            return "cat:q0=" + g9(st.q0) + ",p0=" + g9(st.p0);
        }
    }, spec);
}

std::string state_family_name(const StateSpec& spec) {
    return std::visit([](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) return "fock";
        else if constexpr (std::is_same_v<T, CoherentState>) return "coherent";
        else if constexpr (std::is_same_v<T, SqueezedVacuumState>) return "sqvac";
        else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) return "sdf";
        else return "cat";
    }, spec);
}

// ---- batched evaluation -------------------------------------------------------

WignerRowEvaluator::WignerRowEvaluator(const StateSpec& spec, std::vector<double> p_nodes)
    : p_nodes_(std::move(p_nodes)) {
    validate_state(spec);
    std::visit([&](const auto& st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            p_sq_.resize(p_nodes_.size());
            for (std::size_t j = 0; j < p_nodes_.size(); ++j) p_sq_[j] = p_nodes_[j] * p_nodes_[j];
            plan_ = FockPlan{st.n, st.n % 2 == 0 ? 1.0 : -1.0};
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            GaussPlan plan{st.q0, st.p0, 1.0, {}};
            plan.p_gauss.resize(p_nodes_.size());
            for (std::size_t j = 0; j < p_nodes_.size(); ++j) {
                const double dp = p_nodes_[j] - st.p0;
                plan.p_gauss[j] = std::exp(-dp * dp);
            }
            plan_ = std::move(plan);
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            if (st.phi == 0.0) {
                const double e2s = std::exp(2.0 * st.s);
                GaussPlan plan{st.q0, st.p0, e2s, {}};
                plan.p_gauss.resize(p_nodes_.size());
                for (std::size_t j = 0; j < p_nodes_.size(); ++j) {
                    const double dp = p_nodes_[j] - st.p0;
                    plan.p_gauss[j] = std::exp(-dp * dp / e2s);
                }
                plan_ = std::move(plan);
            } else {
                const double ch = std::cosh(st.s), sh = std::sinh(st.s);
                const double cph = std::cos(st.phi), sph = std::sin(st.phi);
                plan_ = SdfPlan{0, 1.0, st.q0, st.p0,
                                ch + sh * cph, sh * sph, sh * cph - ch, -sh * sph};
            }
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            const double ch = std::cosh(st.s), sh = std::sinh(st.s);
            const double cph = std::cos(st.phi), sph = std::sin(st.phi);
            plan_ = SdfPlan{st.n, st.n % 2 == 0 ? 1.0 : -1.0, st.q0, st.p0,
                            ch + sh * cph, sh * sph, sh * cph - ch, -sh * sph};
        } else {
            const CatNormalization c = cat_normalization(st.q0, st.p0);
            const double nsq = c.norm * c.norm;
            CatPlan plan{st.q0, st.p0, nsq / (2.0 * kPi), nsq / kPi, {}, {}};
            plan.p_gauss.resize(p_nodes_.size());
            plan.p_fringe.resize(p_nodes_.size());
            for (std::size_t j = 0; j < p_nodes_.size(); ++j) {
                const double dp = p_nodes_[j] - st.p0;
                plan.p_gauss[j] = std::exp(-dp * dp);
                plan.p_fringe[j] = std::cos(2.0 * p_nodes_[j] * st.q0);
            }
            plan_ = std::move(plan);
        }
    }, spec);
}

void WignerRowEvaluator::row(double q, std::vector<double>& out) const {
    const std::size_t m = p_nodes_.size();
    std::visit([&](const auto& plan) {
        using T = std::decay_t<decltype(plan)>;
        if constexpr (std::is_same_v<T, FockPlan>) {
            const double qsq = q * q;
            const double pref = plan.sign * kInvPi;
            for (std::size_t j = 0; j < m; ++j) {
                out[j] = pref * weighted_laguerre(plan.n, 2.0 * (qsq + p_sq_[j]));
            }
        } else if constexpr (std::is_same_v<T, SdfPlan>) {
            const double dq = q - plan.q0;
            const double pref = plan.sign * kInvPi;
            for (std::size_t j = 0; j < m; ++j) {
                const double dp = p_nodes_[j] - plan.p0;
                const double u = plan.cqq * dq + plan.cqp * dp;
                const double v = plan.cpp * dp + plan.cpq * dq;
                out[j] = pref * weighted_laguerre(plan.n, 2.0 * (u * u + v * v));
            }
        } else if constexpr (std::is_same_v<T, GaussPlan>) {
            const double dq = q - plan.q0;
            const double rowfac = kInvPi * std::exp(-plan.aq * dq * dq);
            for (std::size_t j = 0; j < m; ++j) out[j] = rowfac * plan.p_gauss[j];
        } else {
            const double qm = q - plan.q0, qp = q + plan.q0;
            const double peaks = plan.peak_amp * (std::exp(-qp * qp) + std::exp(-qm * qm));
            const double fringe = plan.fringe_amp * std::exp(-q * q);
            for (std::size_t j = 0; j < m; ++j) {
                out[j] = plan.p_gauss[j] * (peaks + fringe * plan.p_fringe[j]);
            }
        }
    }, plan_);
}

}  // namespace wigner
