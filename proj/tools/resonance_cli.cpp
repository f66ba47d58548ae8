// Command-line front door: closed-form evaluation tables, scattering
// coefficients, connection-formula verification, and direct parabolic
// cylinder evaluation. Exit codes: 0 success, 1 verification threshold
// exceeded, 2 usage error, 3 numeric failure.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resonance/closed_form.hpp"
#include "resonance/ode_oracle.hpp"
#include "resonance/special_functions.hpp"
#include "resonance/text_io.hpp"
#include "resonance/verify.hpp"
#include "resonance/wkb.hpp"

namespace {

using resonance::Complex;

enum class OutputFormat { csv, json, pretty };

const std::map<std::string, OutputFormat> kFormatNames{
    {"csv", OutputFormat::csv}, {"json", OutputFormat::json}, {"pretty", OutputFormat::pretty}};

std::string num(double v, OutputFormat f) {
  return resonance::format_double(v, f == OutputFormat::pretty ? 10 : 17);
}

Complex parse_complex_or_die(const std::string& text, const std::string& name) {
  auto v = resonance::parse_complex(text);
  if (!v) throw std::invalid_argument("malformed complex literal for " + name +
                                      ": '" + text + "' (expected re,im)");
  return *v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& name) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number in " + name + ": '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(name + " must contain at least one value");
  return out;
}

struct EvalArgs {
  double a = 0.0;
  std::string U = "1,0";
  double t_min = -5.0, t_max = 5.0, step = 0.1;
  OutputFormat format = OutputFormat::csv;
};

int run_eval(const EvalArgs& args) {
  if (!(args.step > 0.0)) throw std::invalid_argument("--step must be > 0");
  if (!(args.t_min < args.t_max)) throw std::invalid_argument("--t-min must be < --t-max");
  const Complex U = parse_complex_or_die(args.U, "--U");
  const resonance::ClosedFormState state{U, resonance::ResonanceParams(args.a)};

  const long n = static_cast<long>(std::floor((args.t_max - args.t_min) / args.step + 1e-9)) + 1;
  std::vector<std::array<double, 4>> rows;
  rows.reserve(n);
  for (long k = 0; k < n; ++k) {
    const double t = args.t_min + static_cast<double>(k) * args.step;
    const Complex w = resonance::closed_form_w(state, t);
    rows.push_back({t, w.real(), w.imag(), std::abs(w)});
  }

  const OutputFormat f = args.format;
  if (f == OutputFormat::csv) {
    std::cout << "t,re_w,im_w,abs_w\n";
    for (const auto& r : rows)
      std::cout << num(r[0], f) << ',' << num(r[1], f) << ',' << num(r[2], f) << ','
                << num(r[3], f) << '\n';
  } else if (f == OutputFormat::json) {
    std::cout << "{\"a\":" << num(args.a, f) << ",\"U\":{\"re\":" << num(U.real(), f)
              << ",\"im\":" << num(U.imag(), f) << "},\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      std::cout << (i ? "," : "") << "{\"t\":" << num(r[0], f) << ",\"re_w\":" << num(r[1], f)
                << ",\"im_w\":" << num(r[2], f) << ",\"abs_w\":" << num(r[3], f) << "}";
    }
    std::cout << "]}\n";
  } else {
    std::cout << "w(t) for a = " << num(args.a, f) << ", U = " << num(U.real(), f) << ","
              << num(U.imag(), f) << "\n";
    for (const auto& r : rows)
      std::cout << "  t=" << num(r[0], f) << "  re=" << num(r[1], f) << "  im=" << num(r[2], f)
                << "  |w|=" << num(r[3], f) << "\n";
  }
  return 0;
}

struct ScatterArgs {
  double a = 0.0;
  std::string V = "1,0";
  OutputFormat format = OutputFormat::pretty;
};

int run_scatter(const ScatterArgs& args) {
  const Complex V = parse_complex_or_die(args.V, "--V");
  const auto sc = resonance::scattering_coefficients(args.a);
  const Complex W = resonance::scattering_map(V, args.a);
  const double invariant = std::norm(sc.alpha) - std::norm(sc.beta);

  const OutputFormat f = args.format;
  if (f == OutputFormat::csv) {
    std::cout << "a,re_alpha,im_alpha,re_beta,im_beta,re_W,im_W,invariant\n"
              << num(args.a, f) << ',' << num(sc.alpha.real(), f) << ','
              << num(sc.alpha.imag(), f) << ',' << num(sc.beta.real(), f) << ','
              << num(sc.beta.imag(), f) << ',' << num(W.real(), f) << ','
              << num(W.imag(), f) << ',' << num(invariant, f) << '\n';
  } else if (f == OutputFormat::json) {
    std::cout << "{\"a\":" << num(args.a, f) << ",\"V\":{\"re\":" << num(V.real(), f)
              << ",\"im\":" << num(V.imag(), f) << "},\"alpha\":{\"re\":"
              << num(sc.alpha.real(), f) << ",\"im\":" << num(sc.alpha.imag(), f)
              << "},\"beta\":{\"re\":" << num(sc.beta.real(), f)
              << ",\"im\":" << num(sc.beta.imag(), f) << "},\"W\":{\"re\":" << num(W.real(), f)
              << ",\"im\":" << num(W.imag(), f) << "},\"invariant\":" << num(invariant, f)
              << "}\n";
  } else {
    std::cout << "alpha     = " << num(sc.alpha.real(), f) << " + " << num(sc.alpha.imag(), f)
              << "i\n"
              << "beta      = " << num(sc.beta.real(), f) << " + " << num(sc.beta.imag(), f)
              << "i\n"
              << "W         = " << num(W.real(), f) << " + " << num(W.imag(), f) << "i\n"
              << "|a|^2-|b|^2 = " << num(invariant, f) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string a_list = "1.0";
  std::string V = "1,0";
  double T = 40.0;
  double rel_tol = 1e-10, abs_tol = 1e-12;
  double threshold = 1e-3;
  bool no_richardson = false;
  std::string frame = "rotating";
  std::string dump_trajectory;
  OutputFormat format = OutputFormat::pretty;
};

int run_verify(const VerifyArgs& args) {
  const std::vector<double> a_values = parse_double_list(args.a_list, "--a");
  const Complex V = parse_complex_or_die(args.V, "--V");
  if (!(args.T >= 20.0)) throw std::invalid_argument("--T must be >= 20");
  if (!(args.threshold > 0.0)) throw std::invalid_argument("--threshold must be > 0");

  resonance::IntegratorConfig config;
  config.rel_tol = args.rel_tol;
  config.abs_tol = args.abs_tol;
  if (args.frame == "lab") config.frame = resonance::Frame::lab;
  else if (args.frame == "rotating") config.frame = resonance::Frame::rotating;
  else throw std::invalid_argument("--frame must be lab or rotating");
  config.validate();

  if (!args.dump_trajectory.empty() && a_values.size() != 1)
    throw std::invalid_argument("--dump-trajectory requires a single --a value");

  const auto items = resonance::sweep(a_values, V, args.T, config, !args.no_richardson);

  bool any_failure = false;
  bool above_threshold = false;
  const OutputFormat f = args.format;
  std::ostringstream body;
  if (f == OutputFormat::csv) body << resonance::reports_csv_header() << '\n';
  if (f == OutputFormat::json) body << "{\"reports\":[";
  bool first = true;
  for (const auto& item : items) {
    if (!item.report) {
      any_failure = true;
      continue;
    }
    const auto& r = *item.report;
    if (r.rel_error > args.threshold) above_threshold = true;
    if (f == OutputFormat::csv) {
      body << resonance::report_csv_row(r) << '\n';
    } else if (f == OutputFormat::json) {
      body << (first ? "" : ",") << resonance::report_to_json(r);
    } else {
      body << "a=" << num(r.a, f) << "  V=" << num(r.V_in.real(), f) << ","
           << num(r.V_in.imag(), f) << "  W_pred=" << num(r.W_predicted.real(), f) << ","
           << num(r.W_predicted.imag(), f) << "  W_meas=" << num(r.W_measured.real(), f)
           << "," << num(r.W_measured.imag(), f) << "  rel_error=" << num(r.rel_error, f)
           << "  T=" << num(r.T_used, f) << '\n';
    }
    first = false;
  }
  if (f == OutputFormat::json) body << "]}\n";
  std::cout << body.str();

  for (std::size_t i = 0; i < items.size(); ++i)
    if (!items[i].error.empty())
      std::cerr << "error: a=" << a_values[i] << ": " << items[i].error << '\n';

  if (!args.dump_trajectory.empty()) {
    const Complex w0 = resonance::wkb_initial_data(a_values[0], -args.T, V);
    const auto traj = resonance::integrate(a_values[0], -args.T, args.T, w0, config);
    std::ofstream out(args.dump_trajectory);
    if (!out) throw std::invalid_argument("cannot open " + args.dump_trajectory);
    traj.write_csv(out);
  }

  if (any_failure) return 3;
  return above_threshold ? 1 : 0;
}

struct PcfArgs {
  std::string nu = "0,0";
  std::string zeta = "0,0";
  OutputFormat format = OutputFormat::pretty;
};

int run_pcf(const PcfArgs& args) {
  const Complex nu = parse_complex_or_die(args.nu, "--nu");
  const Complex zeta = parse_complex_or_die(args.zeta, "--zeta");
  const auto eval = resonance::pcf_D(resonance::PcfOrder(nu), zeta);
  const char* method = eval.method_used == resonance::EvalMethod::series ? "series"
                       : eval.method_used == resonance::EvalMethod::asymptotic
                           ? "asymptotic"
                           : "recurrence";
  const OutputFormat f = args.format;
  if (f == OutputFormat::csv) {
    std::cout << "re,im,method,est_abs_error\n"
              << num(eval.value.real(), f) << ',' << num(eval.value.imag(), f) << ','
              << method << ',' << num(eval.est_abs_error, f) << '\n';
  } else if (f == OutputFormat::json) {
    std::cout << "{\"value\":{\"re\":" << num(eval.value.real(), f)
              << ",\"im\":" << num(eval.value.imag(), f) << "},\"method\":\"" << method
              << "\",\"est_abs_error\":" << num(eval.est_abs_error, f) << "}\n";
  } else {
    std::cout << "D_nu(zeta) = " << num(eval.value.real(), f) << " + "
              << num(eval.value.imag(), f) << "i\nmethod     = " << method
              << "\nest_error  = " << num(eval.est_abs_error, f) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local parametric resonance: exact solution, WKB asymptotics, scattering"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "tabulate the closed-form solution w(t)");
  eval_cmd->add_option("--a", eval_args.a, "coupling constant")->required();
  eval_cmd->add_option("--U", eval_args.U, "incoming WKB amplitude, re,im")->required();
  eval_cmd->add_option("--t-min", eval_args.t_min, "grid start")->required();
  eval_cmd->add_option("--t-max", eval_args.t_max, "grid end")->required();
  eval_cmd->add_option("--step", eval_args.step, "grid step")->required();
  eval_cmd->add_option("--format", eval_args.format, "csv|json|pretty")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));

  ScatterArgs scatter_args;
  CLI::App* scatter_cmd =
      app.add_subcommand("scatter", "scattering coefficients and the connection map");
  scatter_cmd->add_option("--a", scatter_args.a, "coupling constant")->required();
  scatter_cmd->add_option("--V", scatter_args.V, "incoming amplitude, re,im")->required();
  scatter_cmd->add_option("--format", scatter_args.format, "csv|json|pretty")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "reproduce the connection map from numerical integration");
  verify_cmd->add_option("--a", verify_args.a_list, "comma-separated coupling values")
      ->required();
  verify_cmd->add_option("--V", verify_args.V, "incoming amplitude, re,im")->required();
  verify_cmd->add_option("--T", verify_args.T, "integration horizon (>= 20)");
  verify_cmd->add_option("--rel-tol", verify_args.rel_tol, "integrator relative tolerance");
  verify_cmd->add_option("--abs-tol", verify_args.abs_tol, "integrator absolute tolerance");
  verify_cmd->add_option("--threshold", verify_args.threshold,
                         "rel_error threshold for exit status");
  verify_cmd->add_flag("--no-richardson", verify_args.no_richardson,
                       "skip the Richardson run at 2T");
  verify_cmd->add_option("--frame", verify_args.frame, "integration frame: rotating|lab");
  verify_cmd->add_option("--dump-trajectory", verify_args.dump_trajectory,
                         "write the base-T trajectory CSV to this path (single --a only)");
  verify_cmd->add_option("--format", verify_args.format, "csv|json|pretty")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));

  PcfArgs pcf_args;
  CLI::App* pcf_cmd = app.add_subcommand("pcf", "evaluate D_nu(zeta)");
  pcf_cmd->add_option("--nu", pcf_args.nu, "order, re,im")->required();
  pcf_cmd->add_option("--zeta", pcf_args.zeta, "argument, re,im")->required();
  pcf_cmd->add_option("--format", pcf_args.format, "csv|json|pretty")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval_cmd) return run_eval(eval_args);
    if (*scatter_cmd) return run_scatter(scatter_args);
    if (*verify_cmd) return run_verify(verify_args);
    if (*pcf_cmd) return run_pcf(pcf_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
