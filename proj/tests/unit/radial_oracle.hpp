#pragma once

// Test-only oracle: delta for Fock states by 1D radial quadrature in long
// double. Radially, delta(|n>) = (1/2) integral_0^inf |L_n(u)| e^(-u/2) du - 1;
// the integrand is split at the Laguerre sign changes and each panel goes
// through adaptive Simpson. Everything here is independent of the production
// 2D trapezoid path: plain long-double recurrences, own root bracketing.

#include <cmath>
#include <functional>
#include <vector>

namespace testoracle {

inline long double weighted_laguerre_ld(int n, long double x) {
    long double wprev = std::exp(-0.5L * x);
    if (n == 0) return wprev;
    long double wcur = (1.0L - x) * wprev;
    for (int k = 1; k < n; ++k) {
        const long double wnext =
            ((2.0L * k + 1.0L - x) * wcur - static_cast<long double>(k) * wprev) / (k + 1.0L);
        wprev = wcur;
        wcur = wnext;
    }
    return wcur;
}

inline long double simpson_panel(const std::function<long double(long double)>& f,
                                 long double a, long double b, long double fa,
                                 long double fm, long double fb, long double whole,
                                 long double tol, int depth) {
    const long double m = 0.5L * (a + b);
    const long double flm = f(0.5L * (a + m)), frm = f(0.5L * (m + b));
    const long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    const long double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0L * tol) return left + right + err / 15.0L;
    return simpson_panel(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
           simpson_panel(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

inline long double integrate(const std::function<long double(long double)>& f,
                             long double a, long double b, long double tol) {
    const long double fa = f(a), fb = f(b), fm = f(0.5L * (a + b));
    const long double whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
    return simpson_panel(f, a, b, fa, fm, fb, whole, tol, 52);
}

inline double fock_delta_radial(int n) {
    const long double upper = 4.0L * n + 150.0L;
    std::vector<long double> cuts{0.0L};
    long double prev_x = 0.0L, prev_v = weighted_laguerre_ld(n, 0.0L);
    for (long double x = 2e-3L; x < upper; x += 2e-3L) {
        const long double v = weighted_laguerre_ld(n, x);
        if ((prev_v < 0.0L) != (v < 0.0L)) {
            long double a = prev_x, b = x;
            for (int it = 0; it < 120; ++it) {
                const long double m = 0.5L * (a + b);
                if ((weighted_laguerre_ld(n, a) < 0.0L) != (weighted_laguerre_ld(n, m) < 0.0L)) {
                    b = m;
                } else {
                    a = m;
                }
            }
            cuts.push_back(0.5L * (a + b));
        }
        prev_x = x;
        prev_v = v;
    }
    cuts.push_back(upper);
    const auto f = [n](long double u) { return std::abs(weighted_laguerre_ld(n, u)); };
    long double mass = 0.0L;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        mass += integrate(f, cuts[i], cuts[i + 1], 1e-15L);
    }
    return static_cast<double>(0.5L * mass - 1.0L);
}

}  // namespace testoracle
