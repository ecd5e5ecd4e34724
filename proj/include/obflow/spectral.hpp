#ifndef OBFLOW_SPECTRAL_HPP
#define OBFLOW_SPECTRAL_HPP

/**
 * @file spectral.hpp
 * @brief Wavenumber integrals of the mode brackets.
 *
 * An integrand here is a kernel object with
 *
 *   double real(double xi)                    value on the real axis
 *   TailComponents<N> tail(complex xi)        exponential pieces c_k(xi) e^{i w_k xi}
 *   double tail_start(), max_frequency()
 *
 * and int_0^inf is split at X = tail_start(). [0, X] is integrated on the
 * real axis. Each piece of the remainder is analytic and decays in the half
 * plane picked by the sign of its frequency w_k, so [X, inf) is replaced by
 * the ray X + i tau (w_k >= 0) or X - i tau (w_k < 0), where the integrand
 * is no longer oscillatory.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "obflow/errors.hpp"
#include "obflow/modes.hpp"
#include "obflow/quadrature.hpp"

namespace obflow {

/// Partition used by one spectral integration, replayable at nearby parameters.
struct SpectralPlan {
  double tail_start = 0.0;
  std::vector<Interval> real_leaves;
  std::vector<Interval> up_leaves;
  std::vector<Interval> down_leaves;
  double up_scale = 1.0;
  double down_scale = 1.0;
};

namespace detail {

struct RayGroups {
  bool up = false;
  bool down = false;
  double up_scale = 0.0;
  double down_scale = 0.0;
};

template <class K>
auto probe_groups(const K& kernel, double x) {
  const auto comps = kernel.tail(complex(x, 0.0));
  // Slowest decay rate along each ray sets its length scale.
  double up_rate = std::numeric_limits<double>::infinity();
  double down_rate = std::numeric_limits<double>::infinity();
  RayGroups g;
  for (std::size_t k = 0; k < comps.size; ++k) {
    const double w = comps.item[k].frequency;
    if (w >= 0.0) {
      g.up = true;
      up_rate = std::min(up_rate, w);
    } else {
      g.down = true;
      down_rate = std::min(down_rate, -w);
    }
  }
  g.up_scale = 1.0 / std::max(up_rate, 1.0 / x);
  g.down_scale = 1.0 / std::max(down_rate, 1.0 / x);
  return g;
}

template <class K>
complex group_sum(const K& kernel, complex xi, bool up) {
  const auto comps = kernel.tail(xi);
  complex sum = 0.0;
  for (std::size_t k = 0; k < comps.size; ++k) {
    if ((comps.item[k].frequency >= 0.0) == up) sum += comps.item[k].value();
  }
  return sum;
}

template <class K>
auto ray_integrand(const K& kernel, double x, double scale, bool up) {
  return [&kernel, x, scale, up](double v) -> complex {
    const double one_minus = 1.0 - v;
    const double tau = scale * v / one_minus;
    const complex xi(x, up ? tau : -tau);
    const complex g = group_sum(kernel, xi, up);
    if (!finite(g)) throw NonFiniteIntegrand("tail integrand is not finite on the contour");
    if (g == complex(0.0, 0.0)) return g;
    const complex dxi = up ? complex(0.0, 1.0) : complex(0.0, -1.0);
    return g * dxi * (scale / (one_minus * one_minus));
  };
}

inline void accumulate(QuadratureResult<double>& out, const QuadratureResult<double>& part) {
  out.value += part.value;
  out.err_estimate += part.err_estimate;
  out.panels_used += part.panels_used;
  out.converged = out.converged && part.converged;
  out.roundoff_limited = out.roundoff_limited || part.roundoff_limited;
}

inline void accumulate(QuadratureResult<double>& out, complex& tail_sum, const QuadratureResult<complex>& part) {
  tail_sum += part.value;
  out.err_estimate += part.err_estimate;
  out.panels_used += part.panels_used;
  out.converged = out.converged && part.converged;
  out.roundoff_limited = out.roundoff_limited || part.roundoff_limited;
}

inline void check_budget(const QuadratureResult<double>& r, const QuadratureSpec& spec) {
  if (!r.converged && !r.roundoff_limited && r.panels_used >= spec.max_panels) {
    throw QuadratureFailure("panel budget of " + std::to_string(spec.max_panels) +
                            " exhausted with error estimate " + std::to_string(r.err_estimate));
  }
}

}  // namespace detail

/**
 * int_0^inf of a kernel's real-axis values.
 *
 * The imaginary part left over by the two rays is added to the error
 * estimate. With @p record the partition is saved for integrate_spectral_on().
 */
template <class K>
QuadratureResult<double> integrate_spectral(const K& kernel, const QuadratureSpec& spec,
                                            SpectralPlan* record = nullptr) {
  spec.validate();
  const double x = kernel.tail_start();
  const double w = kernel.max_frequency();

  QuadratureSpec real_spec = spec;
  real_spec.tail_cut = 0.0;
  real_spec.oscillation_period.reset();
  if (w > 0.0) real_spec.oscillation_period = std::numbers::pi / w;

  if (record) {
    *record = SpectralPlan{};
    record->tail_start = x;
  }
  auto real_fn = [&kernel](double xi) { return kernel.real(xi); };
  QuadratureResult<double> out;
  out.panels_used = 0;
  detail::accumulate(out, integrate_adaptive(real_fn, 0.0, x, real_spec, record ? &record->real_leaves : nullptr));

  const auto groups = detail::probe_groups(kernel, x);
  QuadratureSpec ray_spec = spec;
  ray_spec.tail_cut = 0.0;
  ray_spec.oscillation_period.reset();
  complex tail = 0.0;
  if (groups.up) {
    const auto f = detail::ray_integrand(kernel, x, groups.up_scale, true);
    detail::accumulate(out, tail, integrate_adaptive(f, 0.0, 1.0, ray_spec, record ? &record->up_leaves : nullptr));
  }
  if (groups.down) {
    const auto f = detail::ray_integrand(kernel, x, groups.down_scale, false);
    detail::accumulate(out, tail,
                       integrate_adaptive(f, 0.0, 1.0, ray_spec, record ? &record->down_leaves : nullptr));
  }
  if (record) {
    record->up_scale = groups.up_scale;
    record->down_scale = groups.down_scale;
  }
  out.value += tail.real();
  out.err_estimate += std::abs(tail.imag());
  detail::check_budget(out, spec);
  return out;
}

/// Same integral on a frozen partition, so results vary smoothly with the kernel's parameters.
template <class K>
QuadratureResult<double> integrate_spectral_on(const K& kernel, const SpectralPlan& plan) {
  const double x = plan.tail_start;
  auto real_fn = [&kernel](double xi) { return kernel.real(xi); };
  QuadratureResult<double> out;
  detail::accumulate(out, integrate_on(real_fn, plan.real_leaves));
  complex tail = 0.0;
  if (!plan.up_leaves.empty()) {
    const auto f = detail::ray_integrand(kernel, x, plan.up_scale, true);
    detail::accumulate(out, tail, integrate_on(f, plan.up_leaves));
  }
  if (!plan.down_leaves.empty()) {
    const auto f = detail::ray_integrand(kernel, x, plan.down_scale, false);
    detail::accumulate(out, tail, integrate_on(f, plan.down_leaves));
  }
  out.value += tail.real();
  out.err_estimate += std::abs(tail.imag());
  return out;
}

// ---------------------------------------------------------------------------
// Kernels

enum class Bracket { Velocity, Stress };

/// bracket(xi) trig(y xi) / xi^power.
class FieldKernel {
 public:
  FieldKernel(const ModeKernel& modes, Bracket which, double y, Trig trig, int power)
      : modes_(modes), which_(which), y_(y), trig_(trig), power_(power) {}

  double real(double xi) const {
    const BracketValues b = modes_.at(xi);
    const double v = which_ == Bracket::Velocity ? b.velocity : b.stress;
    const double arg = y_ * xi;
    // Keep the small-xi quotient as (bracket/xi^2) * (trig/xi^{p-2}).
    const double lead = v / (xi * xi);
    if (trig_ == Trig::Sin) return lead * std::sin(arg) / std::pow(xi, power_ - 2);
    return lead * std::cos(arg) / std::pow(xi, power_ - 2);
  }

  TailComponents<6> tail(complex xi) const {
    const auto b = which_ == Bracket::Velocity ? modes_.velocity_tail(xi) : modes_.stress_tail(xi);
    TailComponents<6> out;
    const complex inv = 1.0 / std::pow(xi, power_);
    if (y_ == 0.0) {
      if (trig_ == Trig::Sin) return out;
      for (std::size_t k = 0; k < b.size; ++k) out.push(b.item[k].coef * inv, b.item[k].exponent, b.item[k].frequency);
      return out;
    }
    const complex phase = complex(0.0, y_) * xi;
    const complex half = trig_ == Trig::Sin ? complex(0.0, -0.5) : complex(0.5, 0.0);
    const double sign = trig_ == Trig::Sin ? -1.0 : 1.0;
    for (std::size_t k = 0; k < b.size; ++k) {
      const double w = b.item[k].frequency;
      const complex c = b.item[k].coef * inv * half;
      out.push(c, b.item[k].exponent + phase, w + y_);
      out.push(sign * c, b.item[k].exponent - phase, w - y_);
    }
    return out;
  }

  double tail_start() const { return modes_.tail_start(); }
  double max_frequency() const { return y_ + modes_.mode_frequency(); }

 private:
  const ModeKernel& modes_;
  Bracket which_;
  double y_;
  Trig trig_;
  int power_;
};

/// Bu(xi) Btau(xi) / xi^4.
class DissipationKernel {
 public:
  explicit DissipationKernel(const ModeKernel& modes) : modes_(modes) {}

  double real(double xi) const {
    const BracketValues b = modes_.at(xi);
    const double s = xi * xi;
    return (b.velocity / s) * (b.stress / s);
  }

  TailComponents<9> tail(complex xi) const {
    const auto u = modes_.velocity_tail(xi);
    const auto t = modes_.stress_tail(xi);
    const complex s = xi * xi;
    const complex inv = 1.0 / (s * s);
    TailComponents<9> out;
    for (std::size_t i = 0; i < u.size; ++i) {
      for (std::size_t j = 0; j < t.size; ++j) {
        out.push(u.item[i].coef * t.item[j].coef * inv, u.item[i].exponent + t.item[j].exponent,
                 u.item[i].frequency + t.item[j].frequency);
      }
    }
    return out;
  }

  double tail_start() const { return modes_.tail_start(); }
  double max_frequency() const { return 2.0 * modes_.mode_frequency(); }

 private:
  const ModeKernel& modes_;
};

/// G(xi) / xi^4 with G = nu t xi^2 - Bu.
class ThicknessKernel {
 public:
  explicit ThicknessKernel(const ModeKernel& modes) : modes_(modes) {}

  double real(double xi) const {
    const double s = xi * xi;
    return modes_.at(xi).defect / (s * s);
  }

  TailComponents<4> tail(complex xi) const {
    auto g = modes_.defect_tail(xi);
    const complex s = xi * xi;
    const complex inv = 1.0 / (s * s);
    for (std::size_t k = 0; k < g.size; ++k) g.item[k].coef *= inv;
    return g;
  }

  double tail_start() const { return modes_.tail_start(); }
  double max_frequency() const { return modes_.mode_frequency(); }

 private:
  const ModeKernel& modes_;
};

/// G(xi)^2 / xi^6.
class EnergyKernel {
 public:
  explicit EnergyKernel(const ModeKernel& modes) : modes_(modes) {}

  double real(double xi) const {
    const double s = xi * xi;
    const double g = modes_.at(xi).defect / s;
    return g * g / s;
  }

  TailComponents<16> tail(complex xi) const {
    const auto g = modes_.defect_tail(xi);
    const complex s = xi * xi;
    const complex inv = 1.0 / (s * s * s);
    TailComponents<16> out;
    for (std::size_t i = 0; i < g.size; ++i) {
      for (std::size_t j = 0; j < g.size; ++j) {
        out.push(g.item[i].coef * g.item[j].coef * inv, g.item[i].exponent + g.item[j].exponent,
                 g.item[i].frequency + g.item[j].frequency);
      }
    }
    return out;
  }

  double tail_start() const { return modes_.tail_start(); }
  double max_frequency() const { return 2.0 * modes_.mode_frequency(); }

 private:
  const ModeKernel& modes_;
};

}  // namespace obflow

#endif  // OBFLOW_SPECTRAL_HPP
