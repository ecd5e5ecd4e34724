#ifndef OBFLOW_FIELDS_HPP
#define OBFLOW_FIELDS_HPP

/**
 * @file fields.hpp
 * @brief Velocity u(y,t) and shear stress tau(y,t) of the startup flow.
 *
 *   u   = A t - (2A / (nu pi)) int_0^inf Bu(xi,t) sin(y xi) / xi^3 dxi
 *   tau = -(2 rho A / pi)      int_0^inf Btau(xi,t) cos(y xi) / xi^2 dxi
 *
 * The Newtonian fluid (lambda == lambda_r) also has the closed forms
 *
 *   u_N = 4 A t i^2erfc(eta),   tau_N = -2 rho A sqrt(nu t) i^1erfc(eta),   eta = y / (2 sqrt(nu t)).
 */

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "obflow/errors.hpp"
#include "obflow/model.hpp"
#include "obflow/modes.hpp"
#include "obflow/quadrature.hpp"
#include "obflow/special_functions.hpp"
#include "obflow/spectral.hpp"

namespace obflow {

struct FieldPoint {
  double y = 0.0;
  double t = 0.0;

  FieldPoint() = default;
  FieldPoint(double y_, double t_) : y(y_), t(t_) {
    if (!(y_ >= 0.0) || !std::isfinite(y_)) throw InvalidParameter("y must be non-negative and finite");
    if (!(t_ >= 0.0) || !std::isfinite(t_)) throw InvalidParameter("t must be non-negative and finite");
  }
};

struct FieldValue {
  double u = 0.0;
  double tau = 0.0;
  double quad_err = 0.0;
  double quad_err_u = 0.0;
  double quad_err_tau = 0.0;
};

/// Model requested by the caller; Auto follows classify().
enum class ModelChoice { Auto, OldroydB, Maxwell, SecondGrade, Newtonian };

inline std::string_view to_string(ModelChoice m) {
  switch (m) {
    case ModelChoice::Auto: return "auto";
    case ModelChoice::OldroydB: return "oldroyd-b";
    case ModelChoice::Maxwell: return "maxwell";
    case ModelChoice::SecondGrade: return "second-grade";
    case ModelChoice::Newtonian: return "newtonian";
  }
  return "unknown";
}

struct EvalOptions {
  ModelChoice model = ModelChoice::Auto;
  QuadratureSpec quad{};
  /// Newtonian fluid through its wavenumber integral instead of i^n erfc.
  bool newtonian_integral_form = false;
};

/// Parameters and evaluation route after applying a ModelChoice.
struct ResolvedModel {
  FluidModel model;
  FluidParams params;
  bool closed_form = false;
};

/**
 * Maxwell drops lambda_r, second-grade drops lambda, Newtonian drops both.
 * OldroydB keeps the parameters and always takes the mode integrals, even
 * when lambda == lambda_r.
 */
inline ResolvedModel resolve_model(const FluidParams& p, ModelChoice choice, bool newtonian_integral_form = false) {
  switch (choice) {
    case ModelChoice::OldroydB: return {FluidModel::OldroydB, p, false};
    case ModelChoice::Maxwell:
      if (!(p.lambda() > 0.0)) throw InvalidParameter("maxwell model needs lambda > 0");
      return {FluidModel::Maxwell, p.with_lambda_r(0.0), false};
    case ModelChoice::SecondGrade:
      if (!(p.lambda_r() > 0.0)) throw InvalidParameter("second-grade model needs lambda_r > 0");
      return {FluidModel::SecondGrade, p.with_lambda(0.0), false};
    case ModelChoice::Newtonian:
      return {FluidModel::Newtonian, FluidParams::newtonian(p.nu(), p.rho()), !newtonian_integral_form};
    case ModelChoice::Auto: break;
  }
  const FluidModel m = classify(p);
  if (m == FluidModel::Newtonian) {
    return {m, FluidParams::newtonian(p.nu(), p.rho()), !newtonian_integral_form};
  }
  return {m, p, false};
}

// ---------------------------------------------------------------------------
// Newtonian closed forms

inline double velocity_newtonian_closed(const FieldPoint& p, const FlowConfig& flow, double nu) {
  if (p.t == 0.0 || flow.accel == 0.0) return 0.0;
  const double eta = p.y / (2.0 * std::sqrt(nu * p.t));
  return 4.0 * flow.accel * p.t * ierfc(eta, 2);
}

inline double shear_newtonian_closed(const FieldPoint& p, const FlowConfig& flow, const FluidParams& params) {
  if (p.t == 0.0 || flow.accel == 0.0) return 0.0;
  const double root = std::sqrt(params.nu() * p.t);
  return -2.0 * params.rho() * flow.accel * root * ierfc(p.y / (2.0 * root), 1);
}

inline double gradient_newtonian_closed(const FieldPoint& p, const FlowConfig& flow, double nu) {
  if (p.t == 0.0 || flow.accel == 0.0) return 0.0;
  const double root = std::sqrt(nu * p.t);
  return -2.0 * flow.accel * std::sqrt(p.t / nu) * ierfc(p.y / (2.0 * root), 1);
}

/// Newtonian velocity through the sine integral with bracket 1 - e^{-nu xi^2 t}.
inline QuadratureResult<double> velocity_newtonian_integral(const FieldPoint& p, const FlowConfig& flow, double nu,
                                                            const QuadratureSpec& spec = {}) {
  QuadratureResult<double> out;
  if (p.t == 0.0 || flow.accel == 0.0) return out;
  const double nt = nu * p.t;
  auto bracket = [nt](double xi) { return -std::expm1(-nt * xi * xi) / (xi * xi); };
  const auto r = integrate_oscillatory(bracket, p.y, Trig::Sin, 1, spec);
  const double c = 2.0 * flow.accel / (nu * std::numbers::pi);
  out = r;
  out.value = flow.accel * p.t - c * r.value;
  out.err_estimate = c * r.err_estimate;
  return out;
}

/// Newtonian shear stress through the cosine integral.
inline QuadratureResult<double> shear_newtonian_integral(const FieldPoint& p, const FlowConfig& flow,
                                                         const FluidParams& params, const QuadratureSpec& spec = {}) {
  QuadratureResult<double> out;
  if (p.t == 0.0 || flow.accel == 0.0) return out;
  const double nt = params.nu() * p.t;
  auto bracket = [nt](double xi) { return -std::expm1(-nt * xi * xi); };
  const auto r = integrate_oscillatory(bracket, p.y, Trig::Cos, 2, spec);
  const double c = 2.0 * params.rho() * flow.accel / std::numbers::pi;
  out = r;
  out.value = -c * r.value;
  out.err_estimate = c * r.err_estimate;
  return out;
}

// ---------------------------------------------------------------------------
// Mode integrals

namespace detail {

inline std::string where(const FieldPoint& p) {
  return "(y=" + std::to_string(p.y) + ", t=" + std::to_string(p.t) + ")";
}

template <class Fn>
auto with_context(const char* what, const FieldPoint& p, Fn&& fn) {
  try {
    return fn();
  } catch (const QuadratureFailure& e) {
    throw QuadratureFailure(std::string(what) + " at " + where(p) + ": " + e.what());
  }
}

inline QuadratureResult<double> velocity_modes(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                                               const QuadratureSpec& spec, SpectralPlan* plan = nullptr) {
  QuadratureResult<double> out;
  if (p.t == 0.0 || flow.accel == 0.0) return out;
  const ModeKernel modes(params, p.t);
  const FieldKernel kernel(modes, Bracket::Velocity, p.y, Trig::Sin, 3);
  out = integrate_spectral(kernel, spec, plan);
  const double c = 2.0 * flow.accel / (params.nu() * std::numbers::pi);
  out.value = flow.accel * p.t - c * out.value;
  out.err_estimate *= c;
  return out;
}

inline QuadratureResult<double> stress_modes(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                                             const QuadratureSpec& spec, SpectralPlan* plan = nullptr) {
  QuadratureResult<double> out;
  if (p.t == 0.0 || flow.accel == 0.0) return out;
  const ModeKernel modes(params, p.t);
  const FieldKernel kernel(modes, Bracket::Stress, p.y, Trig::Cos, 2);
  out = integrate_spectral(kernel, spec, plan);
  const double c = 2.0 * params.rho() * flow.accel / std::numbers::pi;
  out.value *= -c;
  out.err_estimate *= c;
  return out;
}

inline QuadratureResult<double> gradient_modes(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                                               const QuadratureSpec& spec) {
  QuadratureResult<double> out;
  if (p.t == 0.0 || flow.accel == 0.0) return out;
  const ModeKernel modes(params, p.t);
  const FieldKernel kernel(modes, Bracket::Velocity, p.y, Trig::Cos, 2);
  out = integrate_spectral(kernel, spec);
  const double c = 2.0 * flow.accel / (params.nu() * std::numbers::pi);
  out.value *= -c;
  out.err_estimate *= c;
  return out;
}

inline QuadratureResult<double> velocity_resolved(const FieldPoint& p, const ResolvedModel& m, const FlowConfig& flow,
                                                  const QuadratureSpec& spec) {
  if (m.closed_form) return {velocity_newtonian_closed(p, flow, m.params.nu()), 0.0, 0, true};
  return with_context("velocity", p, [&] { return velocity_modes(p, m.params, flow, spec); });
}

inline QuadratureResult<double> stress_resolved(const FieldPoint& p, const ResolvedModel& m, const FlowConfig& flow,
                                                const QuadratureSpec& spec) {
  if (m.closed_form) return {shear_newtonian_closed(p, flow, m.params), 0.0, 0, true};
  return with_context("shear stress", p, [&] { return stress_modes(p, m.params, flow, spec); });
}

}  // namespace detail

inline FieldValue field(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                        const EvalOptions& opts = {}) {
  const ResolvedModel m = resolve_model(params, opts.model, opts.newtonian_integral_form);
  const auto u = detail::velocity_resolved(p, m, flow, opts.quad);
  const auto tau = detail::stress_resolved(p, m, flow, opts.quad);
  return {u.value, tau.value, u.err_estimate + tau.err_estimate, u.err_estimate, tau.err_estimate};
}

inline double velocity(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                       const EvalOptions& opts = {}) {
  const ResolvedModel m = resolve_model(params, opts.model, opts.newtonian_integral_form);
  return detail::velocity_resolved(p, m, flow, opts.quad).value;
}

inline double shear_stress(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                           const EvalOptions& opts = {}) {
  const ResolvedModel m = resolve_model(params, opts.model, opts.newtonian_integral_form);
  return detail::stress_resolved(p, m, flow, opts.quad).value;
}

/// d u / d y.
inline double velocity_gradient(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                                const EvalOptions& opts = {}) {
  const ResolvedModel m = resolve_model(params, opts.model, opts.newtonian_integral_form);
  if (m.closed_form) return gradient_newtonian_closed(p, flow, m.params.nu());
  return detail::with_context("velocity gradient", p,
                              [&] { return detail::gradient_modes(p, m.params, flow, opts.quad); })
      .value;
}

// ---------------------------------------------------------------------------
// PDE residuals

/// Finite-difference steps relative to sqrt(nu t) and t.
struct PdeStencil {
  double rel_step_y = 1e-2;
  double rel_step_t = 1e-2;
};

struct PdeResidual {
  double momentum = 0.0;
  double constitutive = 0.0;
  /// Largest term in each balance.
  double momentum_scale = 0.0;
  double constitutive_scale = 0.0;

  double momentum_relative() const { return momentum_scale > 0.0 ? std::abs(momentum) / momentum_scale : 0.0; }
  double constitutive_relative() const {
    return constitutive_scale > 0.0 ? std::abs(constitutive) / constitutive_scale : 0.0;
  }
};

namespace detail {

// Five-point central weights for the first and second derivative.
inline double d1(const std::array<double, 5>& f, double h) {
  return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
}

inline double d2(const std::array<double, 5>& f, double h) {
  return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
}

}  // namespace detail

/**
 * Residuals of
 *
 *   lambda u_tt + u_t - nu (u_yy + lambda_r u_yyt) = 0
 *   tau + lambda tau_t - mu (u_y + lambda_r u_yt) = 0
 *
 * from five-point central differences of the computed fields. The mode
 * integrals at all stencil nodes reuse the partition found at the centre.
 */
inline PdeResidual pde_residual(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                                const EvalOptions& opts = {}, const PdeStencil& stencil = {}) {
  const ResolvedModel m = resolve_model(params, opts.model, opts.newtonian_integral_form);
  const FluidParams& q = m.params;
  const double hy = stencil.rel_step_y * std::sqrt(q.nu() * p.t);
  const double ht = stencil.rel_step_t * p.t;
  if (!(p.t > 0.0) || p.y - 2.0 * hy < 0.0 || p.t - 2.0 * ht < 0.0) {
    throw StencilOutOfDomain("stencil leaves the domain at " + detail::where(p));
  }
  PdeResidual out;
  if (flow.accel == 0.0) return out;

  std::array<std::array<double, 5>, 5> u{};  // u[i][j] at y + (i-2) hy, t + (j-2) ht
  std::array<double, 5> tau{};               // tau at y, t + (j-2) ht

  if (m.closed_form) {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        u[i][j] = velocity_newtonian_closed({p.y + (i - 2) * hy, p.t + (j - 2) * ht}, flow, q.nu());
      }
    }
    for (int j = 0; j < 5; ++j) tau[j] = shear_newtonian_closed({p.y, p.t + (j - 2) * ht}, flow, q);
  } else {
    SpectralPlan u_plan;
    SpectralPlan tau_plan;
    detail::with_context("velocity", p, [&] { return detail::velocity_modes(p, q, flow, opts.quad, &u_plan); });
    detail::with_context("shear stress", p, [&] { return detail::stress_modes(p, q, flow, opts.quad, &tau_plan); });
    const double cu = 2.0 * flow.accel / (q.nu() * std::numbers::pi);
    const double ct = 2.0 * q.rho() * flow.accel / std::numbers::pi;
    for (int j = 0; j < 5; ++j) {
      const double tj = p.t + (j - 2) * ht;
      const ModeKernel modes(q, tj);
      for (int i = 0; i < 5; ++i) {
        const FieldKernel k(modes, Bracket::Velocity, p.y + (i - 2) * hy, Trig::Sin, 3);
        u[i][j] = flow.accel * tj - cu * integrate_spectral_on(k, u_plan).value;
      }
      const FieldKernel k(modes, Bracket::Stress, p.y, Trig::Cos, 2);
      tau[j] = -ct * integrate_spectral_on(k, tau_plan).value;
    }
  }

  std::array<double, 5> u_yy{};
  std::array<double, 5> u_y{};
  for (int j = 0; j < 5; ++j) {
    std::array<double, 5> column{};
    for (int i = 0; i < 5; ++i) column[i] = u[i][j];
    u_yy[j] = detail::d2(column, hy);
    u_y[j] = detail::d1(column, hy);
  }
  const std::array<double, 5> u_c = {u[2][0], u[2][1], u[2][2], u[2][3], u[2][4]};

  const double lam = q.lambda();
  const double ret = q.lambda_r();
  const double nu = q.nu();
  const double mu = q.mu();

  const double m1 = lam * detail::d2(u_c, ht);
  const double m2 = detail::d1(u_c, ht);
  const double m3 = nu * u_yy[2];
  const double m4 = nu * ret * detail::d1(u_yy, ht);
  out.momentum = m1 + m2 - m3 - m4;
  out.momentum_scale = std::max({std::abs(m1), std::abs(m2), std::abs(m3), std::abs(m4)});

  const double c1 = tau[2];
  const double c2 = lam * detail::d1(tau, ht);
  const double c3 = mu * u_y[2];
  const double c4 = mu * ret * detail::d1(u_y, ht);
  out.constitutive = c1 + c2 - c3 - c4;
  out.constitutive_scale = std::max({std::abs(c1), std::abs(c2), std::abs(c3), std::abs(c4)});
  return out;
}

}  // namespace obflow

#endif  // OBFLOW_FIELDS_HPP
