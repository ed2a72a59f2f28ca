#pragma once

#include "wigner/states.hpp"

#include <complex>

namespace wigner {

// Integration window for the transform integral; the integrand is the
// overlap of two shifted copies of psi, so twice the packet reach plus a
// fixed margin covers it.
double default_x_cutoff(const StateSpec& spec);

inline constexpr int kDefaultTransformNodes = 4096;

// Direct Wigner transform from the position wavefunction,
//   W(q,p) = (1/2pi) integral psi*(q + x/2) psi(q - x/2) e^(ipx) dx,
// by composite trapezoid over [-x_cutoff, x_cutoff]. The closed-form
// evaluators are checked against this path, never the other way round.
std::complex<double> wigner_transform_complex(const StateSpec& spec, double q, double p,
                                              double x_cutoff, int nx);

// Real part of the transform; W is real, so a residual imaginary part above
// 1e-6 signals under-resolution and throws std::runtime_error. Requires
// nx >= 64.
double wigner_from_wavefunction(const StateSpec& spec, double q, double p,
                                double x_cutoff, int nx = kDefaultTransformNodes);

double wigner_from_wavefunction(const StateSpec& spec, double q, double p);

// Upper bound on the cat-state delta,
//   N^2 [1 + (1/sqrt(pi)) integral |cos(2 p q0)| e^(-(p-p0)^2) dp] - 1,
// via adaptive Simpson split at the cosine zeros so the absolute value
// introduces no kinks inside panels. Exactly 0 for q0 = 0.
double cat_delta_upper_bound(double q0, double p0, double tol = 1e-10);

}  // namespace wigner
