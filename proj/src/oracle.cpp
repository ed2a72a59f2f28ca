#include "wigner/oracle.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wigner {

namespace {

constexpr double kPi = std::numbers::pi;

struct Reach {
    double center = 0.0;
    double halfwidth = 1.0;  // sqrt(2n+1) scale of the packet
};

Reach packet_reach(const StateSpec& spec) {
    return std::visit([](const auto& st) -> Reach {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, FockState>) {
            return {0.0, std::sqrt(2.0 * st.n + 1.0)};
        } else if constexpr (std::is_same_v<T, CoherentState>) {
            return {st.q0, 1.0};
        } else if constexpr (std::is_same_v<T, SqueezedVacuumState>) {
            return {st.q0, 1.0};
        } else if constexpr (std::is_same_v<T, SqueezedDisplacedFockState>) {
            return {st.q0, std::sqrt(2.0 * st.n + 1.0)};
        } else {
            return {st.q0, 1.0};
        }
    }, spec);
}

// Adaptive Simpson with an absolute tolerance, standard halving estimate.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0 * tol) {
        return left + right + err / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double default_x_cutoff(const StateSpec& spec) {
    const Reach r = packet_reach(spec);
    return 2.0 * (std::abs(r.center) + r.halfwidth) + 12.0;
}

std::complex<double> wigner_transform_complex(const StateSpec& spec, double q, double p,
                                              double x_cutoff, int nx) {
    if (nx < 64) {
        throw std::invalid_argument("wigner_transform: need nx >= 64, got " +
                                    std::to_string(nx));
    }
    if (!(x_cutoff > 0.0)) {
        throw std::invalid_argument("wigner_transform: x_cutoff must be positive");
    }
    if (!has_wavefunction(spec)) {
        throw std::invalid_argument("wigner_transform: state has no wavefunction path");
    }
    using namespace std::complex_literals;
    const double h = 2.0 * x_cutoff / nx;
    std::complex<double> acc = 0.0;
    for (int k = 0; k <= nx; ++k) {
        const double x = -x_cutoff + k * h;
        const double w = (k == 0 || k == nx) ? 0.5 : 1.0;
        const std::complex<double> term = std::conj(wavefunction(spec, q + 0.5 * x)) *
                                          wavefunction(spec, q - 0.5 * x) *
                                          std::exp(1i * p * x);
        acc += w * term;
    }
    return acc * h / (2.0 * kPi);
}

double wigner_from_wavefunction(const StateSpec& spec, double q, double p,
                                double x_cutoff, int nx) {
    const std::complex<double> w = wigner_transform_complex(spec, q, p, x_cutoff, nx);
    if (std::abs(w.imag()) > 1e-6) {
        throw std::runtime_error(
            "wigner_from_wavefunction: imaginary residual " + std::to_string(w.imag()) +
            " exceeds 1e-6; increase nx or x_cutoff");
    }
    return w.real();
}

double wigner_from_wavefunction(const StateSpec& spec, double q, double p) {
    return wigner_from_wavefunction(spec, q, p, default_x_cutoff(spec),
                                    kDefaultTransformNodes);
}

double cat_delta_upper_bound(double q0, double p0, double tol) {
    if (q0 < 0.0) {
        throw std::invalid_argument("cat_delta_upper_bound: q0 must be >= 0");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("cat_delta_upper_bound: tol must be positive");
    }
    if (q0 == 0.0) return 0.0;  // single coherent packet

    const auto integrand = [q0, p0](double p) {
        const double dp = p - p0;
        return std::abs(std::cos(2.0 * p * q0)) * std::exp(-dp * dp);
    };

    // Gaussian factor is below 1e-35 nine units out; split the window at the
    // cosine zeros p = (2k+1) pi / (4 q0).
    const double lo = p0 - 9.0, hi = p0 + 9.0;
    const double spacing = kPi / (2.0 * q0);
    std::vector<double> cuts{lo};
    const double first = kPi / (4.0 * q0);
    auto k_start = static_cast<long long>(std::ceil((lo - first) / spacing));
    for (long long k = k_start;; ++k) {
        const double z = first + static_cast<double>(k) * spacing;
        if (z >= hi) break;
        if (z > lo) cuts.push_back(z);
    }
    cuts.push_back(hi);

    const double panel_tol = tol * std::sqrt(kPi) / static_cast<double>(cuts.size() - 1);
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        integral += integrate_panel(integrand, cuts[i], cuts[i + 1], panel_tol);
    }

    const CatNormalization c = cat_normalization(q0, p0);
    const double nsq = c.norm * c.norm;
    return nsq * (1.0 + integral / std::sqrt(kPi)) - 1.0;
}

}  // namespace wigner
