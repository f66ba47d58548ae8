#pragma once

// Exact solution of i w' + t w + a conj(w) = 0 through the parabolic
// cylinder basis, plus residual checks for the first-order equation and its
// differential consequences.

#include <complex>
#include <span>

#include "resonance/special_functions.hpp"

namespace resonance {

// Coupling constant a and the derived basis order n = -1 + i a^2/2. The
// second Theorem parameter z equals n identically, so both are computed from
// a and never stored.
struct ResonanceParams {
  double a = 0.0;
  explicit ResonanceParams(double coupling);
  Complex n() const { return {-1.0, 0.5 * a * a}; }
  Complex z() const { return n(); }
};

struct SolutionCoefficients {
  Complex c1, c2;
};

struct ClosedFormState {
  Complex U;  // WKB amplitude of the solution at t -> -inf
  ResonanceParams params;
};

// Below this |a| the coefficient map switches to its analytic a -> 0 limit:
// 1/(a Gamma(-i a^2/2)) is a 0*inf form, finite in the limit but numerically
// catastrophic to evaluate directly.
inline constexpr double kDegenerateCouplingMin = 1e-6;

// Coefficients (c1, c2) of the exact solution
//   w(t) = c1 D_n(e^{i pi/4} sqrt2 t) + c2 D_{-n-1}(e^{i 3pi/4} sqrt2 t)
// whose two-term WKB amplitude at t -> -inf equals U.
SolutionCoefficients theorem1_coefficients(const ResonanceParams& params, Complex U);

Complex closed_form_w(const ClosedFormState& state, double t);

// |i dw/dt + t w + a conj(w)|
double residual_eq1(Complex w, Complex dw_dt, double t, double a);

// |w'' - (i + a^2 - t^2) w| with w'' from a 5-point central stencil over
// uniformly sampled values (odd count >= 5, spacing h, centered at t).
double residual_eq7(std::span<const Complex> w_samples, double h, double t, double a);

// |x'' - x'/(t-a) + (t^2 - a^2) x| for x = Re w: the second-order form
// obtained by eliminating y from x' = (a-t) y, y' = (a+t) x.
double residual_x_system(std::span<const double> x_samples, double h, double t, double a);

}  // namespace resonance
