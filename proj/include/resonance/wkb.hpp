#pragma once

// Two-term WKB representations of the resonance equation at t -> +-inf and
// the scattering (connection) map between the incoming and outgoing
// amplitudes.

#include <complex>

namespace resonance {

using Complex = std::complex<double>;

enum class Side { minus_infinity, plus_infinity };

// WKB amplitude and the order-by-order structure behind the two-term form:
// fast phase Omega(t) = t^2/2, log-phase rate omega = -a^2/2, and
// counter-rotating coefficient psi1 = -a conj(U)/2 (from 2 psi1 + a conj(U) = 0).
struct WkbAmplitude {
  Complex U;
  Side side = Side::minus_infinity;

  static double log_phase_rate(double a) { return -0.5 * a * a; }
  static Complex counter_coefficient(double a, Complex U) {
    return -0.5 * a * std::conj(U);
  }
};

// Recommended minimum |t| for the two-term forms; the omitted remainder is
// O(t^-2).
inline constexpr double kDefaultFarTime = 10.0;

// U e^{i phi} + (psi1/t) e^{-i phi} with phi = t^2/2 - (a^2/2) ln(-t); t < 0.
Complex wkb_minus(double t, double a, Complex U);

// Leading outgoing waveform W e^{i phi}, phi = t^2/2 - (a^2/2) ln t; t > 0.
Complex wkb_plus_leading(double t, double a, Complex W);

struct ScatteringCoefficients {
  Complex alpha, beta;  // |alpha|^2 - |beta|^2 = 1
};

// alpha = e^{a^2 pi/2},
// beta  = e^{i (pi - 2 a^2 ln 2)/4 + pi a^2/4} a sqrt(pi) / Gamma(1 - i a^2/2)
ScatteringCoefficients scattering_coefficients(double a);

// Outgoing amplitude alpha V + beta conj(V).
Complex scattering_map(Complex V, double a);

}  // namespace resonance
