#include "wigner/special_fn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wigner {

double weighted_laguerre(int n, double x) {
    if (n < 0) {
        throw std::domain_error("weighted_laguerre: order must be nonnegative, got n=" +
                                std::to_string(n));
    }
    if (x < 0.0) {
        throw std::domain_error("weighted_laguerre: argument must be nonnegative, got x=" +
                                std::to_string(x));
    }
    double wprev = std::exp(-0.5 * x);  // e^(-x/2) L_0(x)
    if (n == 0) return wprev;
    double wcur = (1.0 - x) * wprev;    // e^(-x/2) L_1(x)
    for (int k = 1; k < n; ++k) {
        const double wnext = ((2.0 * k + 1.0 - x) * wcur - k * wprev) / (k + 1.0);
        wprev = wcur;
        wcur = wnext;
    }
    return wcur;
}

double laguerre(int n, double x) {
    if (n < 0) {
        throw std::domain_error("laguerre: order must be nonnegative, got n=" +
                                std::to_string(n));
    }
    if (n > kLaguerreMaxOrder) {
        throw std::invalid_argument("laguerre: order " + std::to_string(n) +
                                    " exceeds the unweighted cap of " +
                                    std::to_string(kLaguerreMaxOrder) +
                                    "; use weighted_laguerre instead");
    }
    double lprev = 1.0;       // L_0
    if (n == 0) return lprev;
    double lcur = 1.0 - x;    // L_1
    for (int k = 1; k < n; ++k) {
        const double lnext = ((2.0 * k + 1.0 - x) * lcur - k * lprev) / (k + 1.0);
        lprev = lcur;
        lcur = lnext;
    }
    return lcur;
}

}  // namespace wigner
