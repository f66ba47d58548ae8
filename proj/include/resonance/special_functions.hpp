#pragma once

// Complex log-gamma and the parabolic cylinder function D_nu(zeta) for
// complex order and argument: a convergent confluent-series evaluation
// (reference oracle), sectorized large-|zeta| asymptotic expansions, and a
// dispatcher selecting between them at a fixed crossover radius.

#include <complex>

namespace resonance {

using Complex = std::complex<double>;

// Principal-branch log-gamma (real on the positive real axis).
// exp(ln_gamma(z)) matches Gamma(z) to <= ~1e-13 relative on |Im z| <= 50.
// Throws std::domain_error if z is within 1e-12 of a nonpositive integer.
Complex ln_gamma(Complex z);

// 1/Gamma(z); returns 0 at nonpositive integers and remains finite and
// accurate in their neighborhoods.
Complex recip_gamma(Complex z);

struct PcfOrder {
  Complex nu;
  explicit PcfOrder(Complex order);  // throws std::invalid_argument if not finite
};

enum class EvalMethod { series, asymptotic, recurrence };

struct PcfEvaluation {
  Complex value;
  EvalMethod method_used;
  double est_abs_error = 0.0;
};

// Validity regions of the three large-|zeta| expansions of D_nu:
//   principal: |arg zeta| < 3pi/4
//   upper:      pi/4 < arg zeta < 5pi/4
//   lower:     -5pi/4 < arg zeta < -pi/4
enum class SectorKind { principal, upper, lower };

struct Sector {
  SectorKind kind = SectorKind::principal;

  bool contains(double principal_arg) const;
  // arg in this sector's own convention (continuous inside the sector); the
  // branch of zeta^nu is exp(nu*(log|zeta| + i*sector_arg)).
  double sector_arg(double principal_arg) const;
};

// Sector containing arg(zeta) whose boundaries are farthest away; ties go to
// principal, then upper. Under this rule the principal expansion is only used
// for |arg| <= pi/2, where its omitted subdominant component is genuinely
// absent.
Sector select_sector(Complex zeta);

// Series/asymptotic crossover radius of pcf_D.
inline constexpr double kPcfCrossoverRadius = 8.0;

// Confluent-series evaluation of D_nu(zeta) summed in double-double; the
// reference oracle for every other PCF path. Intended for |zeta| <~ 8 (it
// converges everywhere but needs more terms and loses accuracy as |zeta|
// grows; est_abs_error stays honest). Throws std::runtime_error if the sum
// has not converged within `terms` terms.
PcfEvaluation pcf_D_series(const PcfOrder& nu, Complex zeta, int terms = 400);

// Sectorized asymptotic expansion with up to `order` correction terms in each
// 1/zeta^2 series. Throws std::domain_error if arg(zeta) lies outside the
// sector.
PcfEvaluation pcf_D_asymptotic(const PcfOrder& nu, Complex zeta,
                               const Sector& sector, int order = 24);

// D_nu via the three-term recurrence D_nu = zeta D_{nu-1} - (nu-1) D_{nu-2},
// an independent route used for cross-checks.
PcfEvaluation pcf_D_recurrence(const PcfOrder& nu, Complex zeta);

// Dispatcher: series below the crossover radius, sector asymptotics above.
PcfEvaluation pcf_D(const PcfOrder& nu, Complex zeta);

}  // namespace resonance
