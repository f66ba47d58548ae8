#include "resonance/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace resonance {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_stencil(std::size_t n, double h) {
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("residual stencil needs an odd sample count >= 5");
  if (!(h > 0.0)) throw std::invalid_argument("residual stencil needs h > 0");
}

}  // namespace

ResonanceParams::ResonanceParams(double coupling) : a(coupling) {
  if (!std::isfinite(coupling))
    throw std::invalid_argument("ResonanceParams: coupling must be finite");
}

SolutionCoefficients theorem1_coefficients(const ResonanceParams& params, Complex U) {
  if (!is_finite(U)) throw std::invalid_argument("theorem1_coefficients: non-finite U");
  const double a = params.a;
  const double a2 = a * a;

  if (std::abs(a) < kDegenerateCouplingMin) {
    // analytic limit: c1 -> 0 and the conj(U) part of c2 -> 0 since
    // 1/(a Gamma(-i a^2/2)) ~ a/(2i) -> 0
    return {Complex(0.0, 0.0), std::exp(kPi * a2 / 8.0) * U};
  }

  const Complex c1 = (a / std::sqrt(2.0)) * std::exp(-3.0 * kPi * a2 / 8.0) *
                     std::polar(1.0, -3.0 * kPi / 4.0 - 0.25 * a2 * kLn2) * std::conj(U);
  const Complex u_coef =
      std::exp(kPi * a2 / 8.0) * std::polar(1.0, 0.25 * a2 * kLn2);
  const Complex ubar_coef = std::sqrt(kPi) * a * std::exp(-kPi * a2 / 8.0) *
                            std::polar(1.0, kPi / 4.0 - 0.25 * a2 * kLn2) *
                            recip_gamma(Complex(1.0, -0.5 * a2));
  return {c1, u_coef * U + ubar_coef * std::conj(U)};
}

Complex closed_form_w(const ClosedFormState& state, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("closed_form_w: non-finite t");
  const SolutionCoefficients c = theorem1_coefficients(state.params, state.U);
  const Complex n = state.params.n();
  const double s = std::sqrt(2.0) * t;
  const Complex zeta1 = std::polar(1.0, kPi / 4.0) * s;
  const Complex zeta2 = std::polar(1.0, 3.0 * kPi / 4.0) * s;

  Complex w(0.0, 0.0);
  if (c.c1 != Complex(0.0, 0.0)) w += c.c1 * pcf_D(PcfOrder(n), zeta1).value;
  w += c.c2 * pcf_D(PcfOrder(-n - 1.0), zeta2).value;
  return w;
}

double residual_eq1(Complex w, Complex dw_dt, double t, double a) {
  const Complex i(0.0, 1.0);
  return std::abs(i * dw_dt + t * w + a * std::conj(w));
}

double residual_eq7(std::span<const Complex> w_samples, double h, double t, double a) {
  check_stencil(w_samples.size(), h);
  if (h * std::max(1.0, std::abs(t)) > 1e-2)
    throw std::invalid_argument("residual_eq7: step too coarse for the stencil");
  const std::size_t m = w_samples.size() / 2;
  const Complex w2 = (-w_samples[m - 2] + 16.0 * w_samples[m - 1] - 30.0 * w_samples[m] +
                      16.0 * w_samples[m + 1] - w_samples[m + 2]) /
                     (12.0 * h * h);
  const Complex coef(a * a - t * t, 1.0);  // i + a^2 - t^2
  return std::abs(w2 - coef * w_samples[m]);
}

double residual_x_system(std::span<const double> x_samples, double h, double t, double a) {
  check_stencil(x_samples.size(), h);
  if (std::abs(t - a) < 1e-8)
    throw std::invalid_argument("residual_x_system: singular at t = a");
  const std::size_t m = x_samples.size() / 2;
  const double x1 = (x_samples[m - 2] - 8.0 * x_samples[m - 1] + 8.0 * x_samples[m + 1] -
                     x_samples[m + 2]) /
                    (12.0 * h);
  const double x2 = (-x_samples[m - 2] + 16.0 * x_samples[m - 1] - 30.0 * x_samples[m] +
                     16.0 * x_samples[m + 1] - x_samples[m + 2]) /
                    (12.0 * h * h);
  return std::abs(x2 - x1 / (t - a) + (t * t - a * a) * x_samples[m]);
}

}  // namespace resonance
