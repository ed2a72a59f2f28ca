#pragma once

namespace wigner {

// Largest order accepted by the unweighted laguerre(); beyond this the raw
// polynomial values leave the comfortable double range at the arguments a
// phase-space grid produces.
inline constexpr int kLaguerreMaxOrder = 30;

// e^(-x/2) * L_n(x) for x >= 0.
//
// The three-term recurrence is applied to the weighted function itself,
//   w_0 = e^(-x/2),  w_1 = (1-x) e^(-x/2),
//   w_{k+1} = ((2k+1-x) w_k - k w_{k-1}) / (k+1),
// so every intermediate obeys |w_k| <= 1 and orders up to a few hundred are
// safe. The raw polynomial overflows near n ~ 150 at grid-scale arguments,
// and the Wigner formulas only ever need the weighted combination.
//
// Arguments with x/2 beyond the underflow threshold of exp() return 0; the
// true values there are below ~1e-300 and carry no integrable mass.
//
// Throws std::domain_error for n < 0 or x < 0.
double weighted_laguerre(int n, double x);

// Plain L_n(x) by the standard recurrence, any real x, order capped at
// kLaguerreMaxOrder. Meant for cross-checks against textbook values.
// Throws std::domain_error for n < 0, std::invalid_argument for n too large.
double laguerre(int n, double x);

}  // namespace wigner
