#pragma once

// Adaptive Dormand-Prince 5(4) integration of the real system
//   x' = (a - t) y,  y' = (a + t) x        (w = x + i y)
// used as the independent ground truth. The rotating frame integrates
// u = w e^{-i t^2/2} instead: differentiating and substituting the equation
// for w' gives u' = i a conj(u) e^{-i t^2}, which removes the t^2/2 phase
// from the state.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace resonance {

using Complex = std::complex<double>;

enum class Frame { lab, rotating };

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  double min_step = 1e-12;
  Frame frame = Frame::rotating;

  void validate() const;  // throws std::invalid_argument
};

struct TrajectoryPoint {
  double t, x, y;  // lab-frame w = x + i y regardless of integration frame
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  IntegratorConfig config_used;
  std::size_t accepted_steps = 0;  // == points.size() - 1
  std::size_t rejected_steps = 0;

  Complex endpoint() const;
  // columns: t, x, y, |w|, arg w
  void write_csv(std::ostream& out) const;
};

Trajectory integrate(double a, double t0, double t1, Complex w0,
                     const IntegratorConfig& config);

// Two-term WKB seed at t0 < 0 for scattering runs (the second term reduces
// the seeding error from O(1/t0) to O(1/t0^2)).
Complex wkb_initial_data(double a, double t0, Complex V);

}  // namespace resonance
