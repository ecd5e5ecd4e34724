#ifndef OBFLOW_ASYMPTOTICS_HPP
#define OBFLOW_ASYMPTOTICS_HPP

/**
 * @file asymptotics.hpp
 * @brief First-order corrections to the Newtonian fields for small
 *        relaxation and retardation times, lambda/t and lambda_r/t << 1.
 *
 * Dropping e^{r2 t} and expanding the remaining mode to first order in
 * lambda and alpha gives
 *
 *   u   = u_N   - (A y / 2) sqrt(t / (nu pi)) e^{-y^2/(4 nu t)} c / t
 *   tau = tau_N + (mu A / 2) sqrt(t / (nu pi)) (1 + y^2 / (2 nu t)) e^{-y^2/(4 nu t)} c / t
 *
 * with c = lambda in the classical Maxwell-type form. Keeping the
 * retardation terms of the expansion turns c into lambda - lambda_r, which
 * is also what makes the correction vanish for lambda == lambda_r.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "obflow/errors.hpp"
#include "obflow/fields.hpp"
#include "obflow/model.hpp"
#include "obflow/quadrature.hpp"

namespace obflow {

/// Threshold on beta below which the first-order forms are accepted.
inline constexpr double kAsymptoticThreshold = 0.1;

struct SmallnessReport {
  double eps_lambda = 0.0;
  double eps_retard = 0.0;
  double beta = 0.0;
  bool valid = false;
};

inline SmallnessReport smallness(double t, const FluidParams& params) {
  if (!(t > 0.0)) throw InvalidParameter("smallness needs t > 0");
  SmallnessReport r;
  r.eps_lambda = params.lambda() / t;
  r.eps_retard = params.alpha() / (params.nu() * t);
  r.beta = std::max(r.eps_lambda, r.eps_retard);
  r.valid = r.beta < kAsymptoticThreshold;
  return r;
}

/// The mode quantities that enter the first-order expansion.
struct ExpansionTerms {
  double radical = 0.0;            ///< sqrt((1 + alpha xi^2)^2 - 4 nu lambda xi^2)
  double inv_radical = 0.0;        ///< its reciprocal
  double e_r1t = 0.0;              ///< e^{r1 t}
  double r3_over_gap = 0.0;        ///< r3 / (r2 - r1)
  double r3_e_over_gap = 0.0;      ///< r3 e^{r1 t} / (r2 - r1)
  double lam_r2r3_e_over_gap = 0.0;  ///< lambda r2 r3 e^{r1 t} / (r2 - r1)
};

/// Truncated series in xi^2 (second order for the radical, first order in lambda, alpha otherwise).
inline ExpansionTerms expansion_terms(double xi, double t, const FluidParams& params) {
  if (!(xi >= 0.0)) throw InvalidParameter("wavenumber must be non-negative");
  const double nu = params.nu();
  const double lam = params.lambda();
  const double alpha = params.alpha();
  const double s = xi * xi;
  const double nts = nu * t * s;
  const double e = std::exp(-nts);
  const double shift = alpha - nu * lam;
  ExpansionTerms out;
  out.radical = 1.0 + (alpha - 2.0 * nu * lam) * s + 2.0 * nu * lam * shift * s * s;
  out.inv_radical = 1.0 - alpha * s + 2.0 * nu * lam * s;
  out.e_r1t = e * (1.0 + shift * nu * t * s * s);
  out.r3_over_gap = -1.0 + shift * s;
  out.r3_e_over_gap = -e * (1.0 + shift * s * (nts - 1.0));
  out.lam_r2r3_e_over_gap = e * (1.0 + shift * nts * s);
  return out;
}

/// The same quantities from the exact roots.
inline ExpansionTerms exact_expansion_terms(double xi, double t, const FluidParams& params) {
  const SpectralRoots r = spectral_roots(xi, params, t);
  const complex gap = r.r2 - r.r1;
  const complex e1 = std::exp(r.r1 * t);
  const complex root = std::sqrt(complex(r.disc, 0.0));
  ExpansionTerms out;
  out.radical = root.real();
  out.inv_radical = (1.0 / root).real();
  out.e_r1t = e1.real();
  out.r3_over_gap = (r.r3 / gap).real();
  out.r3_e_over_gap = (r.r3 * e1 / gap).real();
  out.lam_r2r3_e_over_gap = (params.lambda() * r.r2 * r.r3 * e1 / gap).real();
  return out;
}

/// Coefficient multiplying the first-order correction.
enum class Correction {
  Relaxation,             ///< lambda
  RelaxationMinusRetard,  ///< lambda - lambda_r
};

struct AsymptoticOptions {
  Correction correction = Correction::Relaxation;
  /// Evaluate outside beta < 0.1 instead of throwing.
  bool allow_outside = false;
};

namespace detail {

inline double correction_time(const FluidParams& p, Correction c) {
  return c == Correction::Relaxation ? p.lambda() : p.lambda() - p.lambda_r();
}

inline void require_regime(const FieldPoint& p, const FluidParams& params, const AsymptoticOptions& opts) {
  if (opts.allow_outside) return;
  if (p.t == 0.0) throw OutsideAsymptoticRegime("first-order forms need t > 0");
  const SmallnessReport r = smallness(p.t, params);
  if (!r.valid) {
    throw OutsideAsymptoticRegime("beta = " + std::to_string(r.beta) + " is not below " +
                                  std::to_string(kAsymptoticThreshold));
  }
}

}  // namespace detail

inline double velocity_approx(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                              const AsymptoticOptions& opts = {}) {
  detail::require_regime(p, params, opts);
  const double nu = params.nu();
  const double u_n = velocity_newtonian_closed(p, flow, nu);
  if (p.t == 0.0) return u_n;
  const double c = detail::correction_time(params, opts.correction);
  const double g = std::exp(-p.y * p.y / (4.0 * nu * p.t));
  return u_n - 0.5 * flow.accel * p.y * std::sqrt(p.t / (nu * std::numbers::pi)) * g * c / p.t;
}

inline double shear_approx(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                           const AsymptoticOptions& opts = {}) {
  detail::require_regime(p, params, opts);
  const double nu = params.nu();
  const double tau_n = shear_newtonian_closed(p, flow, params);
  if (p.t == 0.0) return tau_n;
  const double c = detail::correction_time(params, opts.correction);
  const double a = p.y * p.y / (2.0 * nu * p.t);
  return tau_n + 0.5 * params.mu() * flow.accel * std::sqrt(p.t / (nu * std::numbers::pi)) * (1.0 + a) *
                     std::exp(-0.5 * a) * c / p.t;
}

/// Velocity correction left as its wavenumber integral.
inline double velocity_approx_integral(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                                       const AsymptoticOptions& opts = {}, const QuadratureSpec& spec = {}) {
  detail::require_regime(p, params, opts);
  const double nu = params.nu();
  const double u_n = velocity_newtonian_closed(p, flow, nu);
  if (p.t == 0.0) return u_n;
  const double nt = nu * p.t;
  auto f = [nt](double xi) { return xi * std::exp(-nt * xi * xi); };
  const double integral = integrate_oscillatory(f, p.y, Trig::Sin, 0, spec).value;
  const double c = detail::correction_time(params, opts.correction);
  return u_n - 2.0 * nu * flow.accel * p.t / std::numbers::pi * c * integral;
}

/// Shear-stress correction left as its wavenumber integral.
inline double shear_approx_integral(const FieldPoint& p, const FluidParams& params, const FlowConfig& flow,
                                    const AsymptoticOptions& opts = {}, const QuadratureSpec& spec = {}) {
  detail::require_regime(p, params, opts);
  const double nu = params.nu();
  const double tau_n = shear_newtonian_closed(p, flow, params);
  if (p.t == 0.0) return tau_n;
  const double nt = nu * p.t;
  auto f = [nt](double xi) { return (1.0 - nt * xi * xi) * std::exp(-nt * xi * xi); };
  const double integral = integrate_oscillatory(f, p.y, Trig::Cos, 0, spec).value;
  const double c = detail::correction_time(params, opts.correction);
  return tau_n + 2.0 * params.mu() * flow.accel / std::numbers::pi * c * integral;
}

struct OrderStep {
  double lambda = 0.0;
  double lambda_r = 0.0;
  double beta = 0.0;
  double u_exact = 0.0;
  double u_approx = 0.0;
  double tau_exact = 0.0;
  double tau_approx = 0.0;
  double u_error = 0.0;
  double tau_error = 0.0;
  /// Error ratio to the previous step (0 on the first).
  double u_ratio = 0.0;
  double tau_ratio = 0.0;
};

/**
 * Errors of the first-order forms against the mode integrals while lambda
 * is halved from lambda0, with lambda_r = retard_fraction * lambda.
 */
inline std::vector<OrderStep> order_study(const FieldPoint& p, double nu, double rho, const FlowConfig& flow,
                                          double lambda0, int halvings, double retard_fraction = 0.0,
                                          const AsymptoticOptions& opts = {}, const QuadratureSpec& spec = {}) {
  if (!(lambda0 > 0.0)) throw InvalidParameter("order study needs lambda0 > 0");
  if (halvings < 0) throw InvalidParameter("halvings must be non-negative");
  std::vector<OrderStep> out;
  double lam = lambda0;
  EvalOptions eval;
  eval.model = ModelChoice::OldroydB;
  eval.quad = spec;
  for (int k = 0; k <= halvings; ++k, lam *= 0.5) {
    const FluidParams params(nu, rho, lam, retard_fraction * lam);
    OrderStep s;
    s.lambda = lam;
    s.lambda_r = params.lambda_r();
    s.beta = smallness(p.t, params).beta;
    const FieldValue exact = field(p, params, flow, eval);
    s.u_exact = exact.u;
    s.tau_exact = exact.tau;
    s.u_approx = velocity_approx(p, params, flow, opts);
    s.tau_approx = shear_approx(p, params, flow, opts);
    s.u_error = std::abs(s.u_approx - s.u_exact);
    s.tau_error = std::abs(s.tau_approx - s.tau_exact);
    if (!out.empty()) {
      s.u_ratio = out.back().u_error / s.u_error;
      s.tau_ratio = out.back().tau_error / s.tau_error;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace obflow

#endif  // OBFLOW_ASYMPTOTICS_HPP
