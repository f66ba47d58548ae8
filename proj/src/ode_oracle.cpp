#include "resonance/ode_oracle.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "resonance/text_io.hpp"
#include "resonance/wkb.hpp"

namespace resonance {

namespace {

using State = std::array<double, 2>;

// Dormand-Prince 5(4) tableau
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;
// b5 - b4, the embedded error weights
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

struct Rhs {
  double a;
  Frame frame;

  State operator()(double t, const State& s) const {
    if (frame == Frame::lab) return {(a - t) * s[1], (a + t) * s[0]};
    const double si = std::sin(t * t), co = std::cos(t * t);
    return {a * (s[0] * si + s[1] * co), a * (s[0] * co - s[1] * si)};
  }
};

bool finite(const State& s) { return std::isfinite(s[0]) && std::isfinite(s[1]); }

Complex rotate_out(double t, const State& u) {
  // w = u e^{+i t^2/2}
  return Complex(u[0], u[1]) * std::polar(1.0, 0.5 * t * t);
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("IntegratorConfig: tolerances must be positive");
  if (!(min_step > 0.0) || !(min_step <= max_step))
    throw std::invalid_argument("IntegratorConfig: need 0 < min_step <= max_step");
}

Complex Trajectory::endpoint() const {
  if (points.empty()) return {0.0, 0.0};
  return {points.back().x, points.back().y};
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "t,x,y,abs_w,arg_w\n";
  for (const TrajectoryPoint& p : points) {
    const Complex w(p.x, p.y);
    out << format_double(p.t) << ',' << format_double(p.x) << ','
        << format_double(p.y) << ',' << format_double(std::abs(w)) << ','
        << format_double(std::arg(w)) << '\n';
  }
}

Trajectory integrate(double a, double t0, double t1, Complex w0,
                     const IntegratorConfig& config) {
  config.validate();
  if (!std::isfinite(a) || !std::isfinite(t0) || !std::isfinite(t1))
    throw std::invalid_argument("integrate: non-finite arguments");
  if (!(std::isfinite(w0.real()) && std::isfinite(w0.imag())))
    throw std::invalid_argument("integrate: non-finite initial value");
  if (t0 == t1) throw std::invalid_argument("integrate: t0 must differ from t1");

  const Rhs rhs{a, config.frame};
  const double dir = (t1 > t0) ? 1.0 : -1.0;

  double t = t0;
  State y;
  if (config.frame == Frame::lab) {
    y = {w0.real(), w0.imag()};
  } else {
    const Complex u0 = w0 * std::polar(1.0, -0.5 * t0 * t0);
    y = {u0.real(), u0.imag()};
  }

  Trajectory traj;
  traj.config_used = config;
  auto push_point = [&](double tt, const State& s) {
    const Complex w = (config.frame == Frame::lab) ? Complex(s[0], s[1]) : rotate_out(tt, s);
    traj.points.push_back({tt, w.real(), w.imag()});
  };
  push_point(t, y);

  State k1 = rhs(t, y);
  double h = dir * std::min({config.max_step, std::abs(t1 - t0),
                             0.1 / (1.0 + std::abs(t0))});
  double err_prev = 1.0;
  bool rejected_last = false;
  constexpr std::size_t kMaxSteps = 200'000'000;

  while (dir * (t1 - t) > 0.0) {
    if (traj.accepted_steps + traj.rejected_steps > kMaxSteps)
      throw std::runtime_error("integrate: step budget exceeded");
    if (std::abs(h) < config.min_step)
      throw std::runtime_error("integrate: step size underflow (oscillation unresolved)");
    if (dir * (t + h - t1) > 0.0) h = t1 - t;  // clip final step

    const State k2 = rhs(t + kC2 * h, {y[0] + h * kA21 * k1[0], y[1] + h * kA21 * k1[1]});
    const State k3 = rhs(t + kC3 * h, {y[0] + h * (kA31 * k1[0] + kA32 * k2[0]),
                                       y[1] + h * (kA31 * k1[1] + kA32 * k2[1])});
    const State k4 = rhs(t + kC4 * h,
                         {y[0] + h * (kA41 * k1[0] + kA42 * k2[0] + kA43 * k3[0]),
                          y[1] + h * (kA41 * k1[1] + kA42 * k2[1] + kA43 * k3[1])});
    const State k5 =
        rhs(t + kC5 * h,
            {y[0] + h * (kA51 * k1[0] + kA52 * k2[0] + kA53 * k3[0] + kA54 * k4[0]),
             y[1] + h * (kA51 * k1[1] + kA52 * k2[1] + kA53 * k3[1] + kA54 * k4[1])});
    const State k6 =
        rhs(t + h, {y[0] + h * (kA61 * k1[0] + kA62 * k2[0] + kA63 * k3[0] +
                                kA64 * k4[0] + kA65 * k5[0]),
                    y[1] + h * (kA61 * k1[1] + kA62 * k2[1] + kA63 * k3[1] +
                                kA64 * k4[1] + kA65 * k5[1])});
    const State y5 = {
        y[0] + h * (kB1 * k1[0] + kB3 * k3[0] + kB4 * k4[0] + kB5 * k5[0] + kB6 * k6[0]),
        y[1] + h * (kB1 * k1[1] + kB3 * k3[1] + kB4 * k4[1] + kB5 * k5[1] + kB6 * k6[1])};
    const State k7 = rhs(t + h, y5);  // FSAL

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                            kE6 * k6[i] + kE7 * k7[i]);
      const double sc =
          config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(0.5 * err);

    if (!std::isfinite(err) || !finite(y5)) {
      ++traj.rejected_steps;
      h *= 0.5;
      rejected_last = true;
      continue;
    }

    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;
      push_point(t, y);
      ++traj.accepted_steps;
      // PI controller (Gustafsson): fac = 0.9 err^-0.14 err_prev^0.08
      const double e_clip = std::max(err, 1e-10);
      double fac = 0.9 * std::pow(e_clip, -0.14) * std::pow(err_prev, 0.08);
      fac = std::min(rejected_last ? 1.0 : 5.0, std::max(0.2, fac));
      h *= fac;
      if (std::abs(h) > config.max_step) h = dir * config.max_step;
      err_prev = e_clip;
      rejected_last = false;
    } else {
      ++traj.rejected_steps;
      const double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
      h *= fac;
      rejected_last = true;
    }
  }

  if (!finite(y)) throw std::runtime_error("integrate: non-finite state");
  return traj;
}

Complex wkb_initial_data(double a, double t0, Complex V) {
  if (!(t0 < 0.0)) throw std::domain_error("wkb_initial_data: requires t0 < 0");
  return wkb_minus(t0, a, V);
}

}  // namespace resonance
