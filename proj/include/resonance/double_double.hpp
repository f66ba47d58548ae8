#pragma once

// Double-double ("compensated") arithmetic used by the parabolic cylinder
// series oracle. The confluent series for D_nu(zeta) passes through terms of
// magnitude ~ e^{|Im zeta^2/2|} while summing to O(1); summing in plain
// binary64 would lose up to 14 digits near |zeta| = 8. Only the operations
// the series needs are provided.
//
// Error-free transforms follow Dekker/Knuth; two_prod relies on FMA.

#include <cmath>
#include <complex>

namespace resonance::dd {

struct Double2 {
  double hi = 0.0;
  double lo = 0.0;
  constexpr Double2() = default;
  constexpr Double2(double h) : hi(h) {}
  constexpr Double2(double h, double l) : hi(h), lo(l) {}
  double value() const { return hi + lo; }
};

// relative rounding unit of a normalized double-double
inline constexpr double kEps = 4.93e-32;  // 2^-104

inline Double2 two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Double2 quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline Double2 two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Double2 operator+(const Double2& a, const Double2& b) {
  Double2 s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline Double2 operator-(const Double2& a) { return {-a.hi, -a.lo}; }
inline Double2 operator-(const Double2& a, const Double2& b) { return a + (-b); }

inline Double2 operator*(const Double2& a, const Double2& b) {
  Double2 p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline Double2 operator/(const Double2& a, const Double2& b) {
  double q1 = a.hi / b.hi;
  Double2 r = a - Double2(q1) * b;
  double q2 = r.hi / b.hi;
  r = r - Double2(q2) * b;
  double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + Double2(q3);
}

struct Complex2 {
  Double2 re, im;
  Complex2() = default;
  Complex2(Double2 r, Double2 i) : re(r), im(i) {}
  Complex2(double r, double i = 0.0) : re(r), im(i) {}
  explicit Complex2(std::complex<double> z) : re(z.real()), im(z.imag()) {}
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline Complex2 operator+(const Complex2& a, const Complex2& b) {
  return {a.re + b.re, a.im + b.im};
}
inline Complex2 operator-(const Complex2& a, const Complex2& b) {
  return {a.re - b.re, a.im - b.im};
}
inline Complex2 operator*(const Complex2& a, const Complex2& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex2 operator/(const Complex2& a, const Complex2& b) {
  Double2 n = b.re * b.re + b.im * b.im;
  Complex2 num = a * Complex2{b.re, -b.im};
  return {num.re / n, num.im / n};
}

inline double abs_estimate(const Complex2& a) {
  return std::hypot(a.re.value(), a.im.value());
}

}  // namespace resonance::dd
