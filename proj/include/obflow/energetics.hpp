#ifndef OBFLOW_ENERGETICS_HPP
#define OBFLOW_ENERGETICS_HPP

/**
 * @file energetics.hpp
 * @brief Power balance of the fluid slab 0 <= x <= l, y >= 0.
 *
 *   dE/dt + L + Phi = 0,   E = (rho l / 2) int u^2 dy,
 *   L = l u(0,t) tau(0,t),  Phi = l int tau u_y dy,  delta = (1 / (A t)) int u dy.
 *
 * In wavenumber space, with G = nu t xi^2 - Bu,
 *
 *   L     = -(2 rho l A^2 t / pi)      int Btau / xi^2
 *   Phi   =  (2 rho l A^2 / (nu pi))   int Bu Btau / xi^4
 *   delta =  (2 / (nu pi t))           int G / xi^4
 *   E     =  (rho l A^2 / (pi nu^2))   int G^2 / xi^6
 *
 * The y-space definitions are kept alongside as independent checks.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "obflow/errors.hpp"
#include "obflow/fields.hpp"
#include "obflow/model.hpp"
#include "obflow/modes.hpp"
#include "obflow/quadrature.hpp"
#include "obflow/spectral.hpp"

namespace obflow {

/// Denominator floor of the balance residual.
inline constexpr double kBalanceFloor = 1e-30;

struct EnergeticsReport {
  double t = 0.0;
  double L = 0.0;
  double Phi = 0.0;
  double delta = 0.0;
  double E_kin = 0.0;
  /// Central difference of E_kin.
  double dEkin_dt = 0.0;
  /// -L - Phi.
  double dEkin_dt_balance = 0.0;
  double balance_residual = 0.0;
};

/// Closed forms for the Newtonian fluid.
struct NewtonianEnergetics {
  double L = 0.0;
  double Phi = 0.0;
  double delta = 0.0;
  double E_kin = 0.0;
  double dEkin_dt = 0.0;
};

inline NewtonianEnergetics newtonian_energetics_closed(double t, const FluidParams& params, const FlowConfig& flow) {
  if (!(t >= 0.0)) throw InvalidParameter("t must be non-negative");
  const double nu = params.nu();
  const double a = flow.accel;
  const double base = params.rho() * flow.slab_length * a * a * t * std::sqrt(nu * t / std::numbers::pi);
  const double phi_ratio = 8.0 * (std::numbers::sqrt2 - 1.0) / 3.0;
  NewtonianEnergetics out;
  out.L = -2.0 * base;
  out.Phi = phi_ratio * base;
  out.delta = 4.0 / 3.0 * std::sqrt(nu * t / std::numbers::pi);
  out.dEkin_dt = (2.0 - phi_ratio) * base;
  out.E_kin = 0.4 * out.dEkin_dt * t;
  return out;
}

namespace detail {

inline void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("energetics need t > 0");
}

inline FluidParams energetic_params(const FluidParams& params, const EvalOptions& opts) {
  return resolve_model(params, opts.model, true).params;
}

template <class Fn>
auto energetic_context(const char* what, double t, Fn&& fn) {
  try {
    return fn();
  } catch (const QuadratureFailure& e) {
    throw QuadratureFailure(std::string(what) + " at t=" + std::to_string(t) + ": " + e.what());
  }
}

/// Upper y limit beyond which u is negligible; the wavefront for a Maxwell fluid.
inline double y_extent(double t, const FluidParams& p) {
  if (p.lambda_r() == 0.0 && p.lambda() >= lambda_floor(t)) return t * std::sqrt(p.nu() / p.lambda());
  return 15.0 * std::sqrt(p.nu() * t) * (1.0 + p.lambda() / t + p.lambda_r() / t);
}

inline bool has_wavefront(double t, const FluidParams& p) {
  return p.lambda_r() == 0.0 && p.lambda() >= lambda_floor(t);
}

/// int_0^inf f(y) dy for a field integrand; the cut is doubled until the last piece is below abs_tol.
template <class F>
QuadratureResult<double> integrate_over_y(const F& f, double t, const FluidParams& p, const QuadratureSpec& spec) {
  double y_max = y_extent(t, p);
  QuadratureResult<double> out = integrate_adaptive(f, 0.0, y_max, spec);
  if (has_wavefront(t, p)) return out;
  for (int k = 0; k < 8; ++k) {
    const auto piece = integrate_adaptive(f, y_max, 2.0 * y_max, spec);
    out.value += piece.value;
    out.err_estimate += piece.err_estimate;
    out.panels_used += piece.panels_used;
    out.converged = out.converged && piece.converged;
    y_max *= 2.0;
    if (std::abs(piece.value) < spec.abs_tol) break;
  }
  return out;
}

}  // namespace detail

/// L = l A t tau(0,t).
inline double wall_power(double t, const FluidParams& params, const FlowConfig& flow, const EvalOptions& opts = {}) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) return 0.0;
  const FluidParams p = detail::energetic_params(params, opts);
  return detail::energetic_context("wall power", t, [&] {
    const ModeKernel modes(p, t);
    const FieldKernel kernel(modes, Bracket::Stress, 0.0, Trig::Cos, 2);
    const double c = 2.0 * p.rho() * flow.slab_length * flow.accel * flow.accel * t / std::numbers::pi;
    return -c * integrate_spectral(kernel, opts.quad).value;
  });
}

/**
 * Wall power from the real-axis integral of Btau / xi^2: [0, X] adaptively,
 * then 1/X for the unit part of the bracket plus the remainder, mapped for
 * a decaying remainder and Euler-summed over half periods of the wave
 * frequency t sqrt(nu / lambda) for a Maxwell fluid.
 */
inline double wall_power_direct(double t, const FluidParams& params, const FlowConfig& flow,
                                const EvalOptions& opts = {}) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) return 0.0;
  const FluidParams p = detail::energetic_params(params, opts);
  const ModeKernel modes(p, t);
  const double x = modes.tail_start();
  auto f = [&modes](double xi) { return modes.stress_bracket(xi) / (xi * xi); };
  auto rest = [&modes](double xi) { return (modes.stress_bracket(xi) - 1.0) / (xi * xi); };
  QuadratureSpec spec = opts.quad;
  spec.tail_cut = 0.0;
  double integral = integrate_adaptive(f, 0.0, x, spec).value + 1.0 / x;
  if (detail::has_wavefront(t, p)) {
    const double half = std::numbers::pi / (t * std::sqrt(p.nu() / p.lambda()));
    integral += integrate_alternating(rest, x, half, 8, spec).value;
  } else {
    auto from_x = [&](double v) { return rest(x + v); };
    integral += integrate_semi_infinite(from_x, spec, x).value;
  }
  const double c = 2.0 * p.rho() * flow.slab_length * flow.accel * flow.accel * t / std::numbers::pi;
  return -c * integral;
}

/// Phi through the cosine-transform Parseval identity.
inline double dissipation(double t, const FluidParams& params, const FlowConfig& flow, const EvalOptions& opts = {}) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) return 0.0;
  const FluidParams p = detail::energetic_params(params, opts);
  return detail::energetic_context("dissipation", t, [&] {
    const ModeKernel modes(p, t);
    const DissipationKernel kernel(modes);
    const double c = 2.0 * p.rho() * flow.slab_length * flow.accel * flow.accel / (p.nu() * std::numbers::pi);
    return c * integrate_spectral(kernel, opts.quad).value;
  });
}

/// Phi = l int tau u_y dy with both fields from their own wavenumber integrals.
inline double dissipation_double_integral(double t, const FluidParams& params, const FlowConfig& flow,
                                          const EvalOptions& opts = {}, double y_rel_tol = 1e-7) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) return 0.0;
  const FluidParams p = detail::energetic_params(params, opts);
  EvalOptions inner = opts;
  inner.model = ModelChoice::OldroydB;
  auto f = [&](double y) {
    const FieldPoint pt(y, t);
    return shear_stress(pt, p, flow, inner) * velocity_gradient(pt, p, flow, inner);
  };
  QuadratureSpec spec = opts.quad;
  spec.rel_tol = y_rel_tol;
  return flow.slab_length * detail::integrate_over_y(f, t, p, spec).value;
}

/// delta from the A-independent wavenumber integral of G / xi^4.
inline double boundary_layer_thickness(double t, const FluidParams& params, const FlowConfig& flow,
                                       const EvalOptions& opts = {}) {
  detail::require_positive_time(t);
  (void)flow;
  const FluidParams p = detail::energetic_params(params, opts);
  return detail::energetic_context("boundary-layer thickness", t, [&] {
    const ModeKernel modes(p, t);
    const ThicknessKernel kernel(modes);
    return 2.0 / (p.nu() * std::numbers::pi * t) * integrate_spectral(kernel, opts.quad).value;
  });
}

/// delta = (1 / (A t)) int u dy by quadrature over y.
inline double boundary_layer_thickness_direct(double t, const FluidParams& params, const FlowConfig& flow,
                                              const EvalOptions& opts = {}) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) throw InvalidParameter("the y-space thickness needs A > 0");
  const FluidParams p = detail::energetic_params(params, opts);
  EvalOptions inner = opts;
  inner.model = ModelChoice::OldroydB;
  auto f = [&](double y) { return velocity(FieldPoint(y, t), p, flow, inner); };
  return detail::integrate_over_y(f, t, p, opts.quad).value / (flow.accel * t);
}

/// E = (rho l / 2) int u^2 dy by quadrature over y.
inline double kinetic_energy(double t, const FluidParams& params, const FlowConfig& flow,
                             const EvalOptions& opts = {}) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) return 0.0;
  const FluidParams p = detail::energetic_params(params, opts);
  EvalOptions inner = opts;
  inner.model = ModelChoice::OldroydB;
  auto f = [&](double y) {
    const double u = velocity(FieldPoint(y, t), p, flow, inner);
    return u * u;
  };
  return 0.5 * p.rho() * flow.slab_length * detail::integrate_over_y(f, t, p, opts.quad).value;
}

/// E from the wavenumber integral of G^2 / xi^6.
inline double kinetic_energy_spectral(double t, const FluidParams& params, const FlowConfig& flow,
                                      const EvalOptions& opts = {}) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) return 0.0;
  const FluidParams p = detail::energetic_params(params, opts);
  return detail::energetic_context("kinetic energy", t, [&] {
    const ModeKernel modes(p, t);
    const EnergyKernel kernel(modes);
    const double c = p.rho() * flow.slab_length * flow.accel * flow.accel / (std::numbers::pi * p.nu() * p.nu());
    return c * integrate_spectral(kernel, opts.quad).value;
  });
}

enum class RateForm { Balance, FiniteDifference };

/// Which kinetic-energy evaluation the finite-difference rate differentiates.
enum class EnergyRoute { Spectral, Direct };

inline constexpr double kRateRelStep = 1e-2;

inline double kinetic_energy_rate(double t, const FluidParams& params, const FlowConfig& flow,
                                  RateForm form = RateForm::Balance, const EvalOptions& opts = {},
                                  EnergyRoute route = EnergyRoute::Spectral) {
  detail::require_positive_time(t);
  if (flow.accel == 0.0) return 0.0;
  if (form == RateForm::Balance) {
    return -wall_power(t, params, flow, opts) - dissipation(t, params, flow, opts);
  }
  const double h = kRateRelStep * t;
  auto e = [&](double s) {
    return route == EnergyRoute::Spectral ? kinetic_energy_spectral(s, params, flow, opts)
                                          : kinetic_energy(s, params, flow, opts);
  };
  return (e(t - 2.0 * h) - 8.0 * e(t - h) + 8.0 * e(t + h) - e(t + 2.0 * h)) / (12.0 * h);
}

inline EnergeticsReport full_report(double t, const FluidParams& params, const FlowConfig& flow,
                                    const EvalOptions& opts = {}, EnergyRoute route = EnergyRoute::Spectral) {
  detail::require_positive_time(t);
  EnergeticsReport r;
  r.t = t;
  r.L = wall_power(t, params, flow, opts);
  r.Phi = dissipation(t, params, flow, opts);
  r.delta = boundary_layer_thickness(t, params, flow, opts);
  r.E_kin = route == EnergyRoute::Spectral ? kinetic_energy_spectral(t, params, flow, opts)
                                           : kinetic_energy(t, params, flow, opts);
  r.dEkin_dt = kinetic_energy_rate(t, params, flow, RateForm::FiniteDifference, opts, route);
  r.dEkin_dt_balance = -r.L - r.Phi;
  r.balance_residual = std::abs(r.dEkin_dt + r.L + r.Phi) / std::max(std::abs(r.L), kBalanceFloor);
  return r;
}

}  // namespace obflow

#endif  // OBFLOW_ENERGETICS_HPP
