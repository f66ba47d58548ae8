#include "resonance/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "resonance/closed_form.hpp"
#include "resonance/text_io.hpp"
#include "resonance/wkb.hpp"

namespace resonance {

namespace {

double outgoing_phase(double t, double a) {
  return 0.5 * t * t - 0.5 * a * a * std::log(t);
}

Complex measured_amplitude(double a, Complex V, double T, const IntegratorConfig& config) {
  const Complex w0 = wkb_initial_data(a, -T, V);
  const Trajectory traj = integrate(a, -T, T, w0, config);
  return fit_outgoing_amplitude(traj, a, {0.75 * T, T}).W;
}

std::size_t sweep_workers(std::size_t items) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RESONANCE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = static_cast<std::size_t>(v);
  }
  return std::min(n, items);
}

std::string complex_json(Complex z) {
  return "{\"re\":" + format_double(z.real()) + ",\"im\":" + format_double(z.imag()) + "}";
}

}  // namespace

AmplitudeFit fit_outgoing_amplitude(const Trajectory& traj, double a,
                                    std::pair<double, double> window) {
  const auto [lo, hi] = window;
  if (!(lo < hi) || !(lo > 0.0))
    throw std::invalid_argument("fit_outgoing_amplitude: window must be ordered and positive");

  // normal equations for the basis b1 = e^{i phi}, b2 = e^{-i phi}/t
  double g11 = 0.0, g22 = 0.0;
  Complex g12(0.0, 0.0), r1(0.0, 0.0), r2(0.0, 0.0);
  std::size_t count = 0;
  for (const TrajectoryPoint& p : traj.points) {
    if (p.t < lo || p.t > hi) continue;
    const double phi = outgoing_phase(p.t, a);
    const Complex b1 = std::polar(1.0, phi);
    const Complex b2 = std::polar(1.0, -phi) / p.t;
    const Complex w(p.x, p.y);
    g11 += 1.0;
    g22 += std::norm(b2);
    g12 += std::conj(b1) * b2;
    r1 += std::conj(b1) * w;
    r2 += std::conj(b2) * w;
    ++count;
  }
  if (count < 50)
    throw std::invalid_argument("fit_outgoing_amplitude: window covers fewer than 50 samples");

  const double det_scale = g11 * g22;
  const double det = det_scale - std::norm(g12);
  if (!(det > 1e-8 * det_scale))
    throw std::runtime_error(
        "fit_outgoing_amplitude: basis functions numerically collinear (window too short)");

  AmplitudeFit fit;
  fit.W = (g22 * r1 - g12 * r2) / det;
  fit.counter = (g11 * r2 - std::conj(g12) * r1) / det;
  fit.t_window = window;

  double ss = 0.0;
  for (const TrajectoryPoint& p : traj.points) {
    if (p.t < lo || p.t > hi) continue;
    const double phi = outgoing_phase(p.t, a);
    const Complex model =
        fit.W * std::polar(1.0, phi) + fit.counter / p.t * std::polar(1.0, -phi);
    ss += std::norm(Complex(p.x, p.y) - model);
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(count));
  return fit;
}

VerificationReport verify_connection(double a, Complex V, double T,
                                     const IntegratorConfig& config, bool richardson) {
  if (!(T >= 20.0)) throw std::invalid_argument("verify_connection: T must be >= 20");
  config.validate();

  Complex W = measured_amplitude(a, V, T, config);
  if (richardson) {
    const Complex w2 = measured_amplitude(a, V, 2.0 * T, config);
    W = w2 + (w2 - W) / 3.0;  // cancels the 1/T^2 error class
  }

  VerificationReport report;
  report.a = a;
  report.V_in = V;
  report.W_predicted = scattering_map(V, a);
  report.W_measured = W;
  report.rel_error = std::abs(W - report.W_predicted) /
                     std::max(std::abs(report.W_predicted), kRelErrorFloor);
  report.config_echo = config;
  report.T_used = T;
  return report;
}

double verify_theorem1_matching(double a, Complex U, double t_probe) {
  if (!(t_probe < 0.0))
    throw std::domain_error("verify_theorem1_matching: t_probe must be negative");
  const ClosedFormState state{U, ResonanceParams(a)};
  return std::abs(closed_form_w(state, t_probe) - wkb_minus(t_probe, a, U));
}

std::vector<SweepItem> sweep(std::span<const double> a_values, Complex V, double T,
                             const IntegratorConfig& config, bool richardson) {
  if (a_values.empty()) throw std::invalid_argument("sweep: empty coupling list");
  std::vector<SweepItem> items(a_values.size());

  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= a_values.size()) return;
      try {
        items[i].report = verify_connection(a_values[i], V, T, config, richardson);
      } catch (const std::exception& e) {
        items[i].error = e.what();
      }
    }
  };

  const std::size_t workers = sweep_workers(a_values.size());
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(run);
    for (std::thread& th : pool) th.join();
  }
  return items;
}

std::string report_to_json(const VerificationReport& r) {
  std::ostringstream out;
  out << "{\"a\":" << format_double(r.a) << ",\"V_in\":" << complex_json(r.V_in)
      << ",\"W_predicted\":" << complex_json(r.W_predicted)
      << ",\"W_measured\":" << complex_json(r.W_measured)
      << ",\"rel_error\":" << format_double(r.rel_error) << ",\"config_echo\":{"
      << "\"rel_tol\":" << format_double(r.config_echo.rel_tol)
      << ",\"abs_tol\":" << format_double(r.config_echo.abs_tol)
      << ",\"max_step\":" << format_double(r.config_echo.max_step)
      << ",\"min_step\":" << format_double(r.config_echo.min_step) << ",\"frame\":\""
      << (r.config_echo.frame == Frame::lab ? "lab" : "rotating") << "\"}"
      << ",\"T_used\":" << format_double(r.T_used) << "}";
  return out.str();
}

std::string reports_csv_header() {
  return "a,reV,imV,reW_pred,imW_pred,reW_meas,imW_meas,rel_error,T";
}

std::string report_csv_row(const VerificationReport& r) {
  std::ostringstream out;
  out << format_double(r.a) << ',' << format_double(r.V_in.real()) << ','
      << format_double(r.V_in.imag()) << ',' << format_double(r.W_predicted.real()) << ','
      << format_double(r.W_predicted.imag()) << ',' << format_double(r.W_measured.real())
      << ',' << format_double(r.W_measured.imag()) << ',' << format_double(r.rel_error)
      << ',' << format_double(r.T_used);
  return out.str();
}

}  // namespace resonance
