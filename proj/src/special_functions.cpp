#include "resonance/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "resonance/double_double.hpp"

namespace resonance {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLnSqrt2Pi = 0.9189385332046727417803297;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// B_{2k} / (2k (2k-1)), k = 1..10: the Stirling series coefficients.
constexpr double kStirlingCoef[10] = {
    1.0 / 12.0,          -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,       1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,         -3617.0 / 122400.0,   43867.0 / 244188.0,
    -174611.0 / 125400.0};

// Nearest nonpositive integer if z is within tol of one, else nullopt-like -1
// sentinel (returns true + sets m).
bool near_nonpositive_integer(Complex z, double tol, long& m) {
  double r = std::round(z.real());
  if (r > 0.5) return false;
  if (std::abs(z.real() - r) <= tol && std::abs(z.imag()) <= tol) {
    m = static_cast<long>(r);
    return true;
  }
  return false;
}

// log(sin(pi z)) without overflow for large |Im z|. Uses
//   sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i),  Im z > 0,
// and conjugate symmetry below the axis. Branch is adequate for use under
// exp(); values on the real axis match the elementary ones.
Complex log_sin_pi(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  const Complex i(0.0, 1.0);
  return -i * kPi * z + std::log(1.0 - std::exp(2.0 * i * kPi * z)) +
         i * kPi / 2.0 - std::log(2.0);
}

Complex stirling_ln_gamma(Complex z) {
  // requires |z| >= ~18, Re z > 0
  Complex rz2 = 1.0 / (z * z);
  Complex s(0.0, 0.0);
  for (int k = 9; k >= 0; --k) s = s * rz2 + kStirlingCoef[k];
  return (z - 0.5) * std::log(z) - z + kLnSqrt2Pi + s / z;
}

}  // namespace

Complex ln_gamma(Complex z) {
  if (!is_finite(z)) throw std::invalid_argument("ln_gamma: non-finite argument");
  long m;
  if (near_nonpositive_integer(z, 1e-12, m))
    throw std::domain_error("ln_gamma: pole at nonpositive integer " + std::to_string(m));

  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - log_sin_pi(z) - ln_gamma(1.0 - z);
  }
  Complex shift(0.0, 0.0);
  while (std::abs(z) < 18.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling_ln_gamma(z) - shift;
}

Complex recip_gamma(Complex z) {
  if (!is_finite(z)) throw std::invalid_argument("recip_gamma: non-finite argument");
  long m;
  if (near_nonpositive_integer(z, 1e-12, m)) {
    // Gamma has a simple pole of residue (-1)^m / (-m)! at z = m <= 0, so
    // 1/Gamma(z) = (z - m) (-1)^m Gamma(1 - m) (1 + O(z - m)).
    double fact = 1.0;
    for (long k = 2; k <= -m; ++k) fact *= static_cast<double>(k);
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return (z - static_cast<double>(m)) * sign * fact;
  }
  return std::exp(-ln_gamma(z));
}

PcfOrder::PcfOrder(Complex order) : nu(order) {
  if (!is_finite(order)) throw std::invalid_argument("PcfOrder: non-finite order");
}

namespace {

constexpr double kQuarterPi = kPi / 4.0;

double boundary_distance(SectorKind kind, double a) {
  switch (kind) {
    case SectorKind::principal:
      return 3.0 * kQuarterPi - std::abs(a);
    case SectorKind::upper: {
      double s = (a < -3.0 * kQuarterPi) ? a + 2.0 * kPi : a;
      return std::min(s - kQuarterPi, 5.0 * kQuarterPi - s);
    }
    case SectorKind::lower: {
      double s = (a > 3.0 * kQuarterPi) ? a - 2.0 * kPi : a;
      return std::min(s + 5.0 * kQuarterPi, -kQuarterPi - s);
    }
  }
  return -1.0;
}

}  // namespace

bool Sector::contains(double principal_arg) const {
  return boundary_distance(kind, principal_arg) > 0.0;
}

double Sector::sector_arg(double principal_arg) const {
  switch (kind) {
    case SectorKind::upper:
      return (principal_arg < -3.0 * kQuarterPi) ? principal_arg + 2.0 * kPi : principal_arg;
    case SectorKind::lower:
      return (principal_arg > 3.0 * kQuarterPi) ? principal_arg - 2.0 * kPi : principal_arg;
    case SectorKind::principal:
    default:
      return principal_arg;
  }
}

Sector select_sector(Complex zeta) {
  const double a = std::arg(zeta);
  Sector best;
  double best_dist = -1.0;
  for (SectorKind kind :
       {SectorKind::principal, SectorKind::upper, SectorKind::lower}) {
    double d = boundary_distance(kind, a);
    if (d > best_dist + 1e-15) {
      best_dist = d;
      best.kind = kind;
    }
  }
  return best;
}

namespace {

struct KummerSum {
  dd::Complex2 sum;
  double sum_abs = 0.0;      // sum of |term|, tracks cancellation
  double tail_bound = 0.0;   // bound on the truncated remainder
  int terms_used = 0;
  bool converged = false;
};

// M(a, b, x) = sum_k (a)_k x^k / ((b)_k k!), summed in double-double.
KummerSum kummer_series(Complex a, Complex b, const dd::Complex2& xdd, int max_terms) {
  KummerSum out;
  dd::Complex2 term(1.0, 0.0);
  out.sum = term;
  out.sum_abs = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    dd::Complex2 num(a + static_cast<double>(k));
    dd::Complex2 den(b + static_cast<double>(k));
    term = term * num * xdd / den / dd::Complex2(static_cast<double>(k + 1));
    out.sum = out.sum + term;
    double t = dd::abs_estimate(term);
    out.sum_abs += t;
    out.terms_used = k + 1;
    if (t <= dd::kEps * (dd::abs_estimate(out.sum) + 1.0)) {
      out.converged = true;
      out.tail_bound = 2.0 * t;
      return out;
    }
  }
  out.tail_bound = 2.0 * dd::abs_estimate(term);
  return out;
}

}  // namespace

PcfEvaluation pcf_D_series(const PcfOrder& nu, Complex zeta, int terms) {
  if (terms < 1) throw std::invalid_argument("pcf_D_series: terms must be >= 1");
  if (!is_finite(zeta)) throw std::invalid_argument("pcf_D_series: non-finite argument");

  const Complex v = nu.nu;

  // D_nu(z) = sqrt(pi) 2^{nu/2} e^{-z^2/4} [ M(-nu/2, 1/2, x)/Gamma((1-nu)/2)
  //           - sqrt(2) z M((1-nu)/2, 3/2, x)/Gamma(-nu/2) ],  x = z^2/2.
  // For Re x < 0 apply Kummer's transformation M(a,b,x) = e^x M(b-a,b,-x) to
  // both series; the exponential prefactor becomes e^{+z^2/4} and the terms
  // lose their exponential growth in |Re x|.
  dd::Complex2 xdd = dd::Complex2(zeta) * dd::Complex2(zeta) * dd::Complex2(0.5);
  Complex a1 = -0.5 * v, a2 = 0.5 * (1.0 - v);
  const bool transform = xdd.re.value() < 0.0;
  Complex expo = -0.25 * zeta * zeta;
  if (transform) {
    a1 = 0.5 * (1.0 + v);  // 1/2 - (-nu/2)
    a2 = 1.0 + 0.5 * v;    // 3/2 - (1-nu)/2
    expo = -expo;
    xdd = {-xdd.re, -xdd.im};
  }

  KummerSum s1 = kummer_series(a1, Complex(0.5, 0.0), xdd, terms);
  KummerSum s2 = kummer_series(a2, Complex(1.5, 0.0), xdd, terms);
  if (!s1.converged || !s2.converged)
    throw std::runtime_error(
        "pcf_D_series: series not converged; increase terms or reduce |zeta|");

  const Complex pref = std::sqrt(kPi) * std::exp(0.5 * v * std::log(Complex(2.0, 0.0)) + expo);
  const Complex p1 = pref * recip_gamma(0.5 * (1.0 - v));
  const Complex p2 = pref * (-std::sqrt(2.0)) * zeta * recip_gamma(-0.5 * v);

  const Complex value = p1 * s1.sum.value() + p2 * s2.sum.value();
  const double est =
      std::abs(p1) * (s1.sum_abs * dd::kEps + s1.tail_bound) +
      std::abs(p2) * (s2.sum_abs * dd::kEps + s2.tail_bound) +
      4.0 * kEps * std::abs(value);
  return {value, EvalMethod::series, est};
}

PcfEvaluation pcf_D_asymptotic(const PcfOrder& nu, Complex zeta,
                               const Sector& sector, int order) {
  if (order < 0) throw std::invalid_argument("pcf_D_asymptotic: negative order");
  if (!is_finite(zeta)) throw std::invalid_argument("pcf_D_asymptotic: non-finite argument");
  const double parg = std::arg(zeta);
  if (!sector.contains(parg))
    throw std::domain_error("pcf_D_asymptotic: arg(zeta) outside sector");

  const Complex v = nu.nu;
  const double r = std::abs(zeta);
  const double theta = sector.sector_arg(parg);
  const Complex logz(std::log(r), theta);
  const Complex z2 = zeta * zeta;
  const Complex rz2 = 1.0 / z2;

  // dominant series: 1 - v(v-1)/(2 z^2) + v(v-1)(v-2)(v-3)/(2*4 z^4) - ...
  Complex dom_sum(1.0, 0.0);
  Complex term(1.0, 0.0);
  double dom_omitted = 0.0;
  double prev = 1.0;
  for (int k = 1; k <= order; ++k) {
    term *= -(v - (2.0 * k - 2.0)) * (v - (2.0 * k - 1.0)) * rz2 / (2.0 * k);
    double t = std::abs(term);
    if (t > prev) {  // divergent tail reached
      dom_omitted = t;
      break;
    }
    dom_sum += term;
    prev = t;
    dom_omitted = t;
    if (t <= kEps * std::abs(dom_sum)) break;
  }
  const Complex dom_pref = std::exp(-0.25 * z2 + v * logz);
  Complex value = dom_pref * dom_sum;
  double est = std::abs(dom_pref) * dom_omitted;

  // subdominant component - sqrt(2 pi)/Gamma(-v) e^{+-i v pi} z^{-v-1} e^{z^2/4} S
  // with S = 1 + (v+1)(v+2)/(2 z^2) + ...; carried by the upper/lower sectors.
  const Complex sub_scale = std::sqrt(2.0 * kPi) * recip_gamma(-v);
  if (sector.kind == SectorKind::principal) {
    // The omitted subdominant component has zero coefficient for
    // |arg| <= pi/2; past the Stokes rays it is a genuine omission.
    if (std::abs(theta) > kPi / 2.0)
      est += std::abs(sub_scale * std::exp(0.25 * z2 + (-v - 1.0) * logz));
  } else {
    const double sgn = (sector.kind == SectorKind::upper) ? 1.0 : -1.0;
    const Complex mult =
        -sub_scale * std::exp(Complex(0.0, sgn * kPi) * v + 0.25 * z2 + (-v - 1.0) * logz);
    Complex sub_sum(1.0, 0.0);
    Complex sterm(1.0, 0.0);
    double sub_omitted = 0.0;
    prev = 1.0;
    for (int k = 1; k <= order; ++k) {
      sterm *= (v + (2.0 * k - 1.0)) * (v + 2.0 * k) * rz2 / (2.0 * k);
      double t = std::abs(sterm);
      if (t > prev) {
        sub_omitted = t;
        break;
      }
      sub_sum += sterm;
      prev = t;
      sub_omitted = t;
      if (t <= kEps * std::abs(sub_sum)) break;
    }
    value += mult * sub_sum;
    est += std::abs(mult) * sub_omitted;
  }

  est += 8.0 * kEps * (std::abs(dom_pref) + std::abs(value));
  return {value, EvalMethod::asymptotic, est};
}

PcfEvaluation pcf_D(const PcfOrder& nu, Complex zeta) {
  if (!is_finite(zeta)) throw std::invalid_argument("pcf_D: non-finite argument");
  if (std::abs(zeta) < kPcfCrossoverRadius) return pcf_D_series(nu, zeta);
  return pcf_D_asymptotic(nu, zeta, select_sector(zeta));
}

PcfEvaluation pcf_D_recurrence(const PcfOrder& nu, Complex zeta) {
  const Complex v = nu.nu;
  PcfEvaluation d1 = pcf_D(PcfOrder(v - 1.0), zeta);
  PcfEvaluation d2 = pcf_D(PcfOrder(v - 2.0), zeta);
  Complex value = zeta * d1.value - (v - 1.0) * d2.value;
  double est = std::abs(zeta) * d1.est_abs_error + std::abs(v - 1.0) * d2.est_abs_error +
               4.0 * kEps * std::abs(value);
  return {value, EvalMethod::recurrence, est};
}

}  // namespace resonance
