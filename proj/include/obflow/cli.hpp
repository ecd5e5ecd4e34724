#ifndef OBFLOW_CLI_HPP
#define OBFLOW_CLI_HPP

/**
 * @file cli.hpp
 * @brief Command-line front end: grid parsing, number formatting, the four
 *        subcommands and the verification suite.
 *
 * Depends on CLI11; the core library headers do not.
 */

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "obflow/asymptotics.hpp"
#include "obflow/energetics.hpp"
#include "obflow/errors.hpp"
#include "obflow/fields.hpp"
#include "obflow/model.hpp"
#include "obflow/special_functions.hpp"

namespace obflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitQuadrature = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Grids and numbers

/// "a,b,c" or "start:stop:n" (n points, both ends included).
inline std::vector<double> parse_grid(const std::string& text, const std::string& name) {
  auto to_double = [&](const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && e[-1] == ' ') --e;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || b == e || !std::isfinite(v)) {
      throw ConfigError("--" + name + ": cannot read '" + s + "' as a number");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("--" + name + ": range must be start:stop:n");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const double nd = to_double(parts[2]);
    if (nd < 1.0 || nd != std::floor(nd) || nd > 1e7) throw ConfigError("--" + name + ": n must be a positive integer");
    const long n = static_cast<long>(nd);
    if (n == 1) {
      out.push_back(a);
    } else {
      for (long k = 0; k < n; ++k) out.push_back(k + 1 == n ? b : a + (b - a) * double(k) / double(n - 1));
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(item));
  }
  if (out.empty()) throw ConfigError("--" + name + ": grid is empty");
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (!(out[k] > out[k - 1])) throw ConfigError("--" + name + ": grid must be strictly increasing");
  }
  return out;
}

/// Shortest round-trip decimal; scientific for |x| < 1e-4 or |x| >= 1e6.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const double a = std::abs(x);
  const auto fmt = (a < 1e-4 || a >= 1e6) ? std::chars_format::scientific : std::chars_format::fixed;
  const auto res = std::to_chars(buf, buf + sizeof buf, x, fmt);
  return std::string(buf, res.ptr);
}

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// Output

enum class Format { Csv, Table };

/// Rows of pre-formatted cells under one header.
class Sheet {
 public:
  explicit Sheet(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, Format f) const {
    if (f == Format::Csv) {
      write_csv_row(os, header_);
      for (const auto& r : rows_) write_csv_row(os, r);
      return;
    }
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << r[c];
      }
      os << '\n';
    };
    line(header_);
    std::size_t total = 0;
    for (auto w : width) total += w + 2;
    os << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
    for (const auto& r : rows_) line(r);
  }

 private:
  static void write_csv_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// ---------------------------------------------------------------------------
// Parallel map with deterministic order

inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OBFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

/// out[i] = fn(i) for i < n on up to thread_count() workers; the first exception is rethrown.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < workers; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration

struct RunConfig {
  double nu = 1.0;
  double rho = 1.0;
  double lambda = 0.0;
  double lambda_r = 0.0;
  double accel = 1.0;
  double slab_length = 1.0;
  std::string y_spec = "0";
  std::string t_spec = "1";
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::string out_path;
  std::string format = "csv";
  std::string model = "auto";
  // verify / asymptotic-check
  std::string suite = "all";
  std::string correction = "printed";
  int halvings = 3;
  std::optional<double> lambda0;
  bool lambda_given = false;
  bool lambda_r_given = false;

  FluidParams params() const { return {nu, rho, lambda, lambda_r}; }
  FlowConfig flow() const { return {accel, slab_length}; }

  QuadratureSpec quad() const {
    QuadratureSpec q;
    q.rel_tol = rel_tol;
    q.abs_tol = abs_tol;
    q.validate();
    return q;
  }

  Format output_format() const {
    if (format == "csv") return Format::Csv;
    if (format == "table") return Format::Table;
    throw ConfigError("--format must be csv or table");
  }
};

inline ModelChoice parse_model(const std::string& m) {
  if (m == "auto") return ModelChoice::Auto;
  if (m == "newtonian") return ModelChoice::Newtonian;
  if (m == "maxwell") return ModelChoice::Maxwell;
  if (m == "second-grade") return ModelChoice::SecondGrade;
  if (m == "oldroyd-b") return ModelChoice::OldroydB;
  throw ConfigError("--model must be one of auto, newtonian, maxwell, second-grade, oldroyd-b");
}

/// Models of an energetics run; "all" keeps the ones the parameters support.
inline std::vector<ModelChoice> energetics_models(const RunConfig& c) {
  if (c.model != "all") return {parse_model(c.model)};
  std::vector<ModelChoice> out{ModelChoice::Newtonian};
  if (c.lambda > 0.0) out.push_back(ModelChoice::Maxwell);
  if (c.lambda_r > 0.0) out.push_back(ModelChoice::SecondGrade);
  if (c.lambda > 0.0 || c.lambda_r > 0.0) out.push_back(ModelChoice::OldroydB);
  return out;
}

inline std::string model_label(ModelChoice m, const FluidParams& p) {
  if (m == ModelChoice::Auto) return std::string(to_string(classify(p)));
  return std::string(to_string(m));
}

// ---------------------------------------------------------------------------
// Subcommands

inline Sheet run_field(const RunConfig& c) {
  const auto ys = parse_grid(c.y_spec, "y");
  const auto ts = parse_grid(c.t_spec, "t");
  for (double y : ys) {
    if (y < 0.0) throw ConfigError("--y: values must be non-negative");
  }
  for (double t : ts) {
    if (t < 0.0) throw ConfigError("--t: values must be non-negative");
  }
  const FluidParams params = c.params();
  const FlowConfig flow = c.flow();
  EvalOptions opts;
  opts.model = parse_model(c.model);
  opts.quad = c.quad();
  resolve_model(params, opts.model);

  const std::size_t n = ys.size() * ts.size();
  const auto values = parallel_map<FieldValue>(n, [&](std::size_t i) {
    const double t = ts[i / ys.size()];
    const double y = ys[i % ys.size()];
    return field(FieldPoint(y, t), params, flow, opts);
  });
  Sheet sheet({"y", "t", "u", "tau", "quad_err_u", "quad_err_tau"});
  for (std::size_t i = 0; i < n; ++i) {
    const double t = ts[i / ys.size()];
    const double y = ys[i % ys.size()];
    const auto& v = values[i];
    sheet.add({format_number(y), format_number(t), format_number(v.u), format_number(v.tau),
               format_number(v.quad_err_u), format_number(v.quad_err_tau)});
  }
  return sheet;
}

inline Sheet run_energetics(const RunConfig& c) {
  const auto ts = parse_grid(c.t_spec, "t");
  for (double t : ts) {
    if (!(t > 0.0)) throw ConfigError("--t: energetics need t > 0");
  }
  const FluidParams params = c.params();
  const FlowConfig flow = c.flow();
  const auto models = energetics_models(c);
  for (auto m : models) resolve_model(params, m);
  const QuadratureSpec quad = c.quad();

  const std::size_t n = models.size() * ts.size();
  const auto reports = parallel_map<EnergeticsReport>(n, [&](std::size_t i) {
    EvalOptions opts;
    opts.model = models[i / ts.size()];
    opts.quad = quad;
    return full_report(ts[i % ts.size()], params, flow, opts);
  });
  Sheet sheet({"model", "t", "L", "Phi", "delta", "dEkin_dt", "balance_residual", "L_N", "Phi_N", "delta_N",
               "L_below_newtonian", "Phi_below_newtonian", "delta_below_newtonian"});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = reports[i];
    const auto nw = newtonian_energetics_closed(r.t, params, flow);
    sheet.add({model_label(models[i / ts.size()], params), format_number(r.t), format_number(r.L),
               format_number(r.Phi), format_number(r.delta), format_number(r.dEkin_dt),
               format_number(r.balance_residual), format_number(nw.L), format_number(nw.Phi),
               format_number(nw.delta), format_bool(std::abs(r.L) < std::abs(nw.L)), format_bool(r.Phi < nw.Phi),
               format_bool(r.delta < nw.delta)});
  }
  return sheet;
}

inline AsymptoticOptions asymptotic_options(const RunConfig& c) {
  AsymptoticOptions o;
  if (c.correction == "printed") {
    o.correction = Correction::Relaxation;
  } else if (c.correction == "difference") {
    o.correction = Correction::RelaxationMinusRetard;
  } else {
    throw ConfigError("--correction must be printed or difference");
  }
  return o;
}

/// Order study at the first (y, t) of the grids; lambda_r / lambda is held fixed.
inline std::vector<OrderStep> asymptotic_steps(const RunConfig& c, FieldPoint& where) {
  const auto ys = parse_grid(c.y_spec, "y");
  const auto ts = parse_grid(c.t_spec, "t");
  if (!(ts.front() > 0.0)) throw ConfigError("--t: asymptotic check needs t > 0");
  if (c.halvings < 1 || c.halvings > 12) throw ConfigError("--halvings must be between 1 and 12");
  where = FieldPoint(ys.front(), ts.front());
  const double lambda0 = c.lambda0.value_or(0.08 * where.t);
  if (!(lambda0 > 0.0)) throw ConfigError("--lambda0 must be positive");
  const double fraction = c.lambda > 0.0 ? c.lambda_r / c.lambda : 0.0;
  return order_study(where, c.nu, c.rho, c.flow(), lambda0, c.halvings, fraction, asymptotic_options(c), c.quad());
}

inline constexpr double kOrderLow = 3.2;
inline constexpr double kOrderHigh = 4.8;

inline Sheet run_asymptotic(const RunConfig& c) {
  FieldPoint where;
  const auto steps = asymptotic_steps(c, where);
  Sheet sheet({"y", "t", "lambda", "lambda_r", "beta", "u_exact", "u_approx", "u_error", "u_ratio", "tau_exact",
               "tau_approx", "tau_error", "tau_ratio", "in_band"});
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& s = steps[k];
    const bool band = k == 0 || (s.u_ratio >= kOrderLow && s.u_ratio <= kOrderHigh && s.tau_ratio >= kOrderLow &&
                                 s.tau_ratio <= kOrderHigh);
    sheet.add({format_number(where.y), format_number(where.t), format_number(s.lambda), format_number(s.lambda_r),
               format_number(s.beta), format_number(s.u_exact), format_number(s.u_approx), format_number(s.u_error),
               k ? format_number(s.u_ratio) : "", format_number(s.tau_exact), format_number(s.tau_approx),
               format_number(s.tau_error), k ? format_number(s.tau_ratio) : "", format_bool(band)});
  }
  return sheet;
}

// ---------------------------------------------------------------------------
// Verification suite

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double limit = 0.0;
  bool passed = false;
  /// Reported only; does not affect the exit code.
  bool advisory = false;
};

class Verifier {
 public:
  explicit Verifier(const RunConfig& c) : c_(c) {}

  std::vector<Check> run(const std::string& suite) {
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "special") known = true, special();
    if (all || suite == "quadrature") known = true, quadrature();
    if (all || suite == "fields") known = true, fields();
    if (all || suite == "energetics") known = true, energetics();
    if (all || suite == "asymptotic") known = true, asymptotic();
    if (!known) throw ConfigError("--suite must be all, special, quadrature, fields, energetics or asymptotic");
    return checks_;
  }

 private:
  // Relative error |a - b| / |b| must stay below limit.
  void close(const std::string& suite, const std::string& name, double a, double b, double limit) {
    const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
    checks_.push_back({suite, name, rel, limit, rel < limit, false});
  }
  void below(const std::string& suite, const std::string& name, double value, double limit, bool advisory = false) {
    checks_.push_back({suite, name, value, limit, value < limit, advisory});
  }

  QuadratureSpec quad() const { return c_.quad(); }
  EvalOptions opts(ModelChoice m) const {
    EvalOptions o;
    o.model = m;
    o.quad = quad();
    return o;
  }
  FluidParams oldroyd() const {
    return {c_.nu, c_.rho, c_.lambda_given ? c_.lambda : 0.5, c_.lambda_r_given ? c_.lambda_r : 0.2};
  }

  void special() {
    const std::string s = "special";
    below(s, "erfc(-1) + erfc(1) = 2", std::abs(erfc(-1.0) + erfc(1.0) - 2.0), 1e-15);
    close(s, "i1erfc(0) = 1/sqrt(pi)", ierfc(0.0, 1), std::numbers::inv_sqrtpi, 1e-15);
    close(s, "i2erfc(0) = 1/4", ierfc(0.0, 2), 0.25, 1e-15);
    double worst = 0.0;
    for (unsigned n = 1; n <= 2; ++n) {
      for (double x = 0.0; x <= 4.0; x += 0.25) {
        const double h = 1e-5;
        const double d = (ierfc(x + h, n) - ierfc(x - h, n)) / (2.0 * h);
        worst = std::max(worst, std::abs(d + ierfc(x, n - 1)));
      }
    }
    below(s, "d/dx i^n erfc = -i^(n-1) erfc", worst, 1e-6);
  }

  void quadrature() {
    const std::string s = "quadrature";
    const auto q = quad();
    close(s, "int e^-x = 1", integrate_semi_infinite([](double x) { return std::exp(-x); }, q).value, 1.0, 1e-12);
    close(s, "int (1 - e^-x^2)/x^2 = sqrt(pi)",
          integrate_semi_infinite([](double x) { return -std::expm1(-x * x) / (x * x); }, q).value,
          std::sqrt(std::numbers::pi), 1e-9);
    const FlowConfig flow(1.0, 1.0);
    close(s, "newtonian sine integral = 4 t i2erfc", velocity_newtonian_integral({2.0, 1.0}, flow, 1.0, q).value,
          velocity_newtonian_closed({2.0, 1.0}, flow, 1.0), 1e-8);
  }

  void fields() {
    const std::string s = "fields";
    const FlowConfig flow = c_.flow();
    const FluidParams base = oldroyd();
    const struct {
      const char* name;
      ModelChoice m;
      FluidParams p;
    } models[] = {{"newtonian", ModelChoice::Newtonian, base},
                  {"maxwell", ModelChoice::Maxwell, FluidParams(c_.nu, c_.rho, 0.4, 0.0)},
                  {"second-grade", ModelChoice::SecondGrade, FluidParams(c_.nu, c_.rho, 0.0, 0.4)},
                  {"oldroyd-b", ModelChoice::OldroydB, base}};
    for (const auto& m : models) {
      double worst = 0.0;
      for (double t : {0.5, 1.0, 5.0}) {
        const double u = velocity({0.0, t}, m.p, flow, opts(m.m));
        worst = std::max(worst, std::abs(u - flow.accel * t) / std::max(flow.accel * t, 1e-300));
      }
      below(s, std::string("u(0,t) = A t, ") + m.name, worst, 1e-8);
      const double nu = m.p.nu();
      const double t = 1.0;
      const double yp = std::min(1.0, 0.5 * t * std::sqrt(nu / std::max(m.p.lambda(), 1e-300)));
      const auto r = pde_residual({std::max(yp, 0.5 * std::sqrt(nu * t)), t}, m.p, flow, opts(m.m));
      below(s, std::string("momentum residual, ") + m.name, r.momentum_relative(), 1e-4);
      below(s, std::string("constitutive residual, ") + m.name, r.constitutive_relative(), 1e-4);
    }
    const FluidParams joseph(c_.nu, c_.rho, 0.3, 0.3);
    double worst = 0.0;
    for (double y : {0.0, 1.0, 3.0}) {
      for (double t : {0.5, 1.0, 5.0}) {
        const auto a = field({y, t}, joseph, flow, opts(ModelChoice::OldroydB));
        const auto b = field({y, t}, joseph, flow, opts(ModelChoice::Newtonian));
        worst = std::max({worst, std::abs(a.u - b.u) / std::max(std::abs(b.u), 1e-300),
                          std::abs(a.tau - b.tau) / std::max(std::abs(b.tau), 1e-300)});
      }
    }
    below(s, "lambda = lambda_r matches newtonian", worst, 1e-6);
  }

  void energetics() {
    const std::string s = "energetics";
    const FlowConfig flow = c_.flow();
    const FluidParams nw = FluidParams::newtonian(c_.nu, c_.rho);
    const auto closed = newtonian_energetics_closed(1.0, nw, flow);
    const auto o = opts(ModelChoice::Newtonian);
    close(s, "newtonian L closed form", wall_power(1.0, nw, flow, o), closed.L, 1e-6);
    close(s, "newtonian Phi closed form", dissipation(1.0, nw, flow, o), closed.Phi, 1e-6);
    close(s, "newtonian delta closed form", boundary_layer_thickness(1.0, nw, flow, o), closed.delta, 1e-6);
    const FluidParams base = oldroyd();
    const struct {
      const char* name;
      ModelChoice m;
      FluidParams p;
    } models[] = {{"newtonian", ModelChoice::Newtonian, base},
                  {"maxwell", ModelChoice::Maxwell, FluidParams(c_.nu, c_.rho, 0.4, 0.0)},
                  {"second-grade", ModelChoice::SecondGrade, FluidParams(c_.nu, c_.rho, 0.0, 0.4)},
                  {"oldroyd-b", ModelChoice::OldroydB, base}};
    for (const auto& m : models) {
      double worst = 0.0;
      bool signs = true;
      for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const auto r = full_report(t, m.p, flow, opts(m.m));
        worst = std::max(worst, r.balance_residual);
        signs = signs && r.L < 0.0 && r.Phi > 0.0 && r.delta > 0.0;
      }
      below(s, std::string("energy balance, ") + m.name, worst, 1e-3);
      below(s, std::string("L < 0 < Phi, ") + m.name, signs ? 0.0 : 1.0, 0.5);
    }
    const FluidParams order(c_.nu, c_.rho, 0.6, 0.2);
    const auto r = full_report(1.0, order, flow, opts(ModelChoice::OldroydB));
    const auto n = newtonian_energetics_closed(1.0, order, flow);
    below(s, "|L| / |L_N| (lambda=0.6, lambda_r=0.2)", std::abs(r.L) / std::abs(n.L), 1.0, true);
    below(s, "Phi / Phi_N (lambda=0.6, lambda_r=0.2)", r.Phi / n.Phi, 1.0, true);
    below(s, "delta / delta_N (lambda=0.6, lambda_r=0.2)", r.delta / n.delta, 1.0, true);
  }

  void asymptotic() {
    const std::string s = "asymptotic";
    RunConfig c = c_;
    if (!c.lambda_given) c.lambda = 0.5;
    if (!c.lambda_r_given) c.lambda_r = 0.0;
    if (c.y_spec == "0" && c.t_spec == "1") {
      c.y_spec = "1";
      c.t_spec = "10";
    }
    FieldPoint where;
    const auto steps = asymptotic_steps(c, where);
    const bool asserted = c.lambda_r == 0.0 || c.correction == "difference";
    for (std::size_t k = 1; k < steps.size(); ++k) {
      const auto& st = steps[k];
      for (const auto& [what, ratio] : {std::pair{"u", st.u_ratio}, std::pair{"tau", st.tau_ratio}}) {
        const std::string name = std::string(what) + " error ratio at lambda=" + format_number(st.lambda) +
                                 " (lambda_r/lambda=" + format_number(c.lambda > 0 ? c.lambda_r / c.lambda : 0.0) +
                                 ")";
        const bool ok = ratio >= kOrderLow && ratio <= kOrderHigh;
        checks_.push_back({s, name, ratio, kOrderHigh, ok, !asserted});
      }
    }
  }

  const RunConfig& c_;
  std::vector<Check> checks_;
};

inline Sheet verify_sheet(const std::vector<Check>& checks) {
  Sheet sheet({"suite", "check", "measured", "limit", "status"});
  for (const auto& ch : checks) {
    const std::string status = ch.passed ? "pass" : (ch.advisory ? "report" : "FAIL");
    sheet.add({ch.suite, ch.name, format_number(ch.measured), format_number(ch.limit), status});
  }
  return sheet;
}

// ---------------------------------------------------------------------------
// Entry point

inline void add_common(CLI::App* app, RunConfig& c, bool grids = true) {
  app->add_option("--nu", c.nu, "kinematic viscosity");
  app->add_option("--rho", c.rho, "density");
  app->add_option("--lambda", c.lambda, "relaxation time");
  app->add_option("--lambda-r", c.lambda_r, "retardation time");
  app->add_option("--A", c.accel, "plate acceleration");
  app->add_option("--l", c.slab_length, "slab length");
  if (grids) {
    app->add_option("--y", c.y_spec, "wall distances: list a,b,c or start:stop:n");
    app->add_option("--t", c.t_spec, "times: list a,b,c or start:stop:n");
  }
  app->add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance");
  app->add_option("--abs-tol", c.abs_tol, "absolute quadrature tolerance");
  app->add_option("--out", c.out_path, "output file (default standard output)");
  app->add_option("--format", c.format, "csv or table");
}

inline void emit(const Sheet& sheet, const RunConfig& c, std::ostream& out) {
  const Format f = c.output_format();
  if (c.out_path.empty()) {
    sheet.write(out, f);
    return;
  }
  std::ofstream file(c.out_path);
  if (!file) throw ConfigError("cannot open --out file '" + c.out_path + "'");
  sheet.write(file, f);
}

/// Writes the message for a failed run and returns its exit code.
inline int report_error(const std::exception& e, std::ostream& err) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidParameter*>(&e) ||
      dynamic_cast<const OutsideAsymptoticRegime*>(&e)) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (dynamic_cast<const QuadratureFailure*>(&e)) {
    err << "quadrature failure: " << e.what() << '\n';
    return kExitQuadrature;
  }
  err << "numerical error: " << e.what() << '\n';
  return kExitQuadrature;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Startup flow of an Oldroyd-B fluid over a constantly accelerating plate"};
  app.require_subcommand(1);
  RunConfig c;

  auto* field_cmd = app.add_subcommand("field", "velocity and shear stress on a (y, t) grid");
  add_common(field_cmd, c);
  field_cmd->add_option("--model", c.model, "auto, newtonian, maxwell, second-grade or oldroyd-b");

  auto* energy_cmd = app.add_subcommand("energetics", "wall power, dissipation, thickness and energy balance");
  add_common(energy_cmd, c);
  energy_cmd->add_option("--model", c.model, "auto, newtonian, maxwell, second-grade, oldroyd-b or all");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite; exit 0 iff every check passes");
  add_common(verify_cmd, c);
  verify_cmd->add_option("--suite", c.suite, "all, special, quadrature, fields, energetics or asymptotic");
  verify_cmd->add_option("--correction", c.correction, "printed (lambda) or difference (lambda - lambda_r)");

  auto* asym_cmd = app.add_subcommand("asymptotic-check", "error of the first-order forms as lambda is halved");
  add_common(asym_cmd, c);
  asym_cmd->add_option("--lambda0", c.lambda0, "starting relaxation time (default 0.08 t)");
  asym_cmd->add_option("--halvings", c.halvings, "number of halvings");
  asym_cmd->add_option("--correction", c.correction, "printed (lambda) or difference (lambda - lambda_r)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    for (auto* cmd : {field_cmd, energy_cmd, verify_cmd, asym_cmd}) {
      if (cmd->parsed()) {
        c.lambda_given = cmd->count("--lambda") > 0;
        c.lambda_r_given = cmd->count("--lambda-r") > 0;
      }
    }
    if (field_cmd->parsed()) {
      emit(run_field(c), c, out);
      return kExitOk;
    }
    if (energy_cmd->parsed()) {
      emit(run_energetics(c), c, out);
      return kExitOk;
    }
    if (asym_cmd->parsed()) {
      if (c.lambda_r_given && !c.lambda_given) throw ConfigError("--lambda-r needs --lambda (their ratio is held fixed)");
      emit(run_asymptotic(c), c, out);
      return kExitOk;
    }
    c.quad();
    Verifier v(c);
    const auto checks = v.run(c.suite);
    emit(verify_sheet(checks), c, out);
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& ch) {
      return !ch.passed && !ch.advisory;
    });
    if (failed > 0) {
      err << failed << " check(s) failed:\n";
      for (const auto& ch : checks) {
        if (!ch.passed && !ch.advisory) err << "  " << ch.suite << ": " << ch.name << '\n';
      }
      return kExitFailed;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

}  // namespace obflow::cli

#endif  // OBFLOW_CLI_HPP
