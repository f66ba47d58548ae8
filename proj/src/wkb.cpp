#include "resonance/wkb.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "resonance/special_functions.hpp"

namespace resonance {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

Complex wkb_minus(double t, double a, Complex U) {
  if (!(t < 0.0)) throw std::domain_error("wkb_minus: requires t < 0");
  if (!is_finite(U) || !std::isfinite(a))
    throw std::invalid_argument("wkb_minus: non-finite input");
  const double phi = 0.5 * t * t + WkbAmplitude::log_phase_rate(a) * std::log(-t);
  const Complex psi1 = WkbAmplitude::counter_coefficient(a, U);
  assert(std::abs(2.0 * psi1 + a * std::conj(U)) <= 1e-12 * (1.0 + std::abs(U)));
  return U * std::polar(1.0, phi) + psi1 / t * std::polar(1.0, -phi);
}

Complex wkb_plus_leading(double t, double a, Complex W) {
  if (!(t > 0.0)) throw std::domain_error("wkb_plus_leading: requires t > 0");
  if (!is_finite(W) || !std::isfinite(a))
    throw std::invalid_argument("wkb_plus_leading: non-finite input");
  const double phi = 0.5 * t * t + WkbAmplitude::log_phase_rate(a) * std::log(t);
  return W * std::polar(1.0, phi);
}

ScatteringCoefficients scattering_coefficients(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("scattering_coefficients: non-finite a");
  const double a2 = a * a;
  const Complex alpha = Complex(std::exp(a2 * kPi / 2.0), 0.0);
  const Complex beta = a * std::sqrt(kPi) * std::exp(kPi * a2 / 4.0) *
                       std::polar(1.0, (kPi - 2.0 * a2 * kLn2) / 4.0) *
                       recip_gamma(Complex(1.0, -0.5 * a2));
  return {alpha, beta};
}

Complex scattering_map(Complex V, double a) {
  if (!is_finite(V)) throw std::invalid_argument("scattering_map: non-finite V");
  const ScatteringCoefficients s = scattering_coefficients(a);
  return s.alpha * V + s.beta * std::conj(V);
}

}  // namespace resonance
