#ifndef OBFLOW_QUADRATURE_HPP
#define OBFLOW_QUADRATURE_HPP

/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod integration on finite and semi-infinite
 *        ranges, plus half-period panel summation with Euler acceleration
 *        for Fourier-type integrands f(xi) sin(y xi) / xi^p.
 *
 * Everything is templated on the integrand's value type so the same
 * machinery integrates real functions on the real axis and complex
 * functions along contour rays.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <type_traits>
#include <vector>

#include "obflow/errors.hpp"

namespace obflow {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_panels = 1000000;
  /// Wavelength hint; when set, finite ranges are pre-split at this spacing.
  std::optional<double> oscillation_period;
  /// Semi-infinite: integrate [0, tail_cut] directly and map only the rest.
  /// Oscillatory: first half-period boundary of the accelerated tail.
  double tail_cut = 0.0;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw InvalidParameter("quadrature tolerances must be positive");
    if (max_panels < 1) throw InvalidParameter("max_panels must be at least 1");
  }
};

template <class T = double>
struct QuadratureResult {
  T value{};
  double err_estimate = 0.0;
  long panels_used = 0;
  bool converged = true;
  /// Stopped because every panel sat at its rounding floor.
  bool roundoff_limited = false;
};

struct Interval {
  double a = 0.0;
  double b = 0.0;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208707212312, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
bool finite(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <class T>
struct PanelEstimate {
  T value{};
  double err = 0.0;
  double abs = 0.0;
};

template <class F>
auto gauss_kronrod21(const F& f, double a, double b) {
  using T = std::invoke_result_t<const F&, double>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  if (!finite(fc)) throw NonFiniteIntegrand("integrand is not finite at an evaluation node");
  T result_k = fc * kWgk[10];
  T result_g{};
  double resabs = magnitude(fc) * kWgk[10];
  std::array<T, 10> f1{};
  std::array<T, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const T lo = f(center - dx);
    const T hi = f(center + dx);
    if (!finite(lo) || !finite(hi)) throw NonFiniteIntegrand("integrand is not finite at an evaluation node");
    f1[j] = lo;
    f2[j] = hi;
    result_k += (lo + hi) * kWgk[j];
    resabs += (magnitude(lo) + magnitude(hi)) * kWgk[j];
    if (j % 2 == 1) result_g += (lo + hi) * kWg[j / 2];
  }
  const T mean = result_k * 0.5;
  double resasc = kWgk[10] * magnitude(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (magnitude(f1[j] - mean) + magnitude(f2[j] - mean));

  const double scale = std::abs(half);
  resabs *= scale;
  resasc *= scale;
  double err = magnitude((result_k - result_g) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return PanelEstimate<T>{result_k * half, err, resabs};
}

}  // namespace detail

/// Single 21-point Gauss-Kronrod panel.
template <class F>
auto gauss_kronrod21(const F& f, double a, double b) {
  using T = std::invoke_result_t<const F&, double>;
  const auto p = detail::gauss_kronrod21(f, a, b);
  return QuadratureResult<T>{p.value, p.err, 1, true};
}

/**
 * Globally adaptive bisection on [a, b]: the panel with the largest error
 * estimate is split until the summed estimate meets
 * max(abs_tol, rel_tol |I|) or the panel budget runs out.
 *
 * When @p leaves is given, the final partition is appended to it so the same
 * rule can be replayed with integrate_on().
 */
template <class F>
auto integrate_adaptive(const F& f, double a, double b, const QuadratureSpec& spec,
                        std::vector<Interval>* leaves = nullptr) {
  using T = std::invoke_result_t<const F&, double>;
  spec.validate();
  QuadratureResult<T> out;
  if (a == b) return out;

  struct Node {
    Interval iv;
    T value;
    double err;
    double abs;
    bool operator<(const Node& o) const { return err < o.err; }
  };
  std::priority_queue<Node> heap;
  double abs_total = 0.0;

  auto push_panels = [&](double lo, double hi) {
    const auto est = detail::gauss_kronrod21(f, lo, hi);
    heap.push(Node{{lo, hi}, est.value, est.err, est.abs});
    out.value += est.value;
    out.err_estimate += est.err;
    abs_total += est.abs;
    ++out.panels_used;
  };

  long initial = 1;
  if (spec.oscillation_period && *spec.oscillation_period > 0.0) {
    initial = std::max<long>(1, static_cast<long>(std::ceil((b - a) / *spec.oscillation_period)));
    initial = std::min(initial, spec.max_panels);
  }
  for (long k = 0; k < initial; ++k) {
    push_panels(a + (b - a) * double(k) / double(initial), k + 1 == initial ? b : a + (b - a) * double(k + 1) / double(initial));
  }

  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(out.value)); };
  constexpr double kRoundoff = 100.0 * std::numeric_limits<double>::epsilon();
  while (out.err_estimate > target()) {
    if (out.err_estimate <= kRoundoff * abs_total) {
      out.converged = false;
      out.roundoff_limited = true;
      break;
    }
    if (out.panels_used + 1 > spec.max_panels) {
      out.converged = false;
      break;
    }
    Node worst = heap.top();
    const double mid = 0.5 * (worst.iv.a + worst.iv.b);
    if (!(mid > worst.iv.a && mid < worst.iv.b)) {
      out.converged = false;
      break;
    }
    heap.pop();
    out.value -= worst.value;
    out.err_estimate -= worst.err;
    abs_total -= worst.abs;
    --out.panels_used;
    push_panels(worst.iv.a, mid);
    push_panels(mid, worst.iv.b);
  }

  // Re-sum from the leaves so the running subtraction leaves no residue.
  T total{};
  double err = 0.0;
  std::vector<Node> nodes;
  nodes.reserve(heap.size());
  while (!heap.empty()) {
    nodes.push_back(heap.top());
    heap.pop();
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& x, const Node& y) { return x.iv.a < y.iv.a; });
  for (const auto& n : nodes) {
    total += n.value;
    err += n.err;
    if (leaves) leaves->push_back(n.iv);
  }
  out.value = total;
  out.err_estimate = err;
  return out;
}

/// Replays a fixed partition with one Gauss-Kronrod panel per interval.
template <class F>
auto integrate_on(const F& f, const std::vector<Interval>& leaves) {
  using T = std::invoke_result_t<const F&, double>;
  QuadratureResult<T> out;
  for (const auto& iv : leaves) {
    const auto est = detail::gauss_kronrod21(f, iv.a, iv.b);
    out.value += est.value;
    out.err_estimate += est.err;
    ++out.panels_used;
  }
  return out;
}

/**
 * Integral over [0, inf) through xi = c + scale * u / (1 - u), u in [0, 1),
 * with c = spec.tail_cut (the part below c is integrated directly).
 * The map never evaluates the integrand at xi = 0 or at u = 1.
 */
template <class F>
auto integrate_semi_infinite(const F& f, const QuadratureSpec& spec, double scale = 1.0,
                             std::vector<Interval>* leaves = nullptr) {
  using T = std::invoke_result_t<const F&, double>;
  spec.validate();
  if (!(scale > 0.0)) throw InvalidParameter("mapping scale must be positive");
  const double cut = spec.tail_cut;
  QuadratureResult<T> head;
  QuadratureSpec inner = spec;
  inner.tail_cut = 0.0;
  if (cut > 0.0) {
    head = integrate_adaptive(f, 0.0, cut, inner);
  }
  auto mapped = [&](double u) -> T {
    const double one_minus = 1.0 - u;
    const double xi = cut + scale * u / one_minus;
    const T v = f(xi);
    if (!detail::finite(v)) throw NonFiniteIntegrand("integrand is not finite at an evaluation node");
    if (v == T{}) return v;
    return v * (scale / (one_minus * one_minus));
  };
  inner.oscillation_period.reset();
  auto tail = integrate_adaptive(mapped, 0.0, 1.0, inner, leaves);
  tail.value += head.value;
  tail.err_estimate += head.err_estimate;
  tail.panels_used += head.panels_used;
  tail.converged = tail.converged && head.converged;
  tail.roundoff_limited = tail.roundoff_limited || head.roundoff_limited;
  return tail;
}

enum class Trig { Sin, Cos };

/**
 * Euler transform of an alternating-sign sequence of panel integrals.
 * Returns the accelerated sum and the magnitude of its last correction.
 */
inline std::pair<double, double> euler_sum(const std::vector<double>& terms) {
  // a_k = (-1)^k b_k;  sum = sum_n (-1)^n Delta^n b_0 / 2^{n+1}.
  std::vector<double> diff(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) diff[k] = (k % 2 == 0) ? terms[k] : -terms[k];
  double sum = 0.0;
  double last = 0.0;
  double weight = 0.5;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    last = ((n % 2 == 0) ? 1.0 : -1.0) * diff[0] * weight;
    sum += last;
    weight *= 0.5;
    for (std::size_t k = 0; k + 1 < diff.size() - n; ++k) diff[k] = diff[k + 1] - diff[k];
  }
  return {sum, std::abs(last)};
}

inline constexpr int kEulerDepth = 12;

/**
 * int_origin^inf f for an f whose sign alternates on consecutive panels of
 * length @p half. Panels below @p start_panel are summed directly, the rest
 * with a depth-12 Euler transform; if the transform misses the tolerance
 * the accelerated part is pushed further out.
 */
template <class F>
QuadratureResult<double> integrate_alternating(const F& f, double origin, double half, long start_panel,
                                               const QuadratureSpec& spec) {
  spec.validate();
  if (!(half > 0.0)) throw InvalidParameter("half period must be positive");
  long start = std::max<long>(start_panel, 4);

  QuadratureSpec panel_spec = spec;
  panel_spec.oscillation_period.reset();
  panel_spec.tail_cut = 0.0;
  auto panel = [&](long k) { return integrate_adaptive(f, origin + k * half, origin + (k + 1) * half, panel_spec); };

  QuadratureResult<double> head;
  long head_end = 0;
  while (true) {
    for (; head_end < start; ++head_end) {
      const auto r = panel(head_end);
      head.value += r.value;
      head.err_estimate += r.err_estimate;
      head.panels_used += r.panels_used;
      head.converged = head.converged && r.converged;
      head.roundoff_limited = head.roundoff_limited || r.roundoff_limited;
    }
    std::vector<double> terms;
    QuadratureResult<double> out = head;
    for (long k = 0; k <= kEulerDepth; ++k) {
      const auto r = panel(start + k);
      terms.push_back(r.value);
      out.err_estimate += r.err_estimate;
      out.panels_used += r.panels_used;
      out.converged = out.converged && r.converged;
      out.roundoff_limited = out.roundoff_limited || r.roundoff_limited;
    }
    const auto [tail, correction] = euler_sum(terms);
    out.value += tail;
    out.err_estimate += correction;
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    out.converged = out.converged && out.err_estimate <= target;
    if (out.converged || correction <= target || out.panels_used * 2 > spec.max_panels) return out;
    start *= 2;
  }
}

/**
 * int_0^inf f_smooth(xi) trig(y xi) / xi^p dxi.
 *
 * For y > 0 the range is cut at the zeros k pi / y of the kernel and the
 * alternating panel sums go through integrate_alternating(); the first
 * accelerated panel is at spec.tail_cut (default 8 half periods).
 * For y = 0 this is integrate_semi_infinite (and identically zero for sin).
 */
template <class F>
QuadratureResult<double> integrate_oscillatory(const F& f_smooth, double y, Trig kind, int decay_power,
                                               const QuadratureSpec& spec) {
  spec.validate();
  if (!(y >= 0.0)) throw InvalidParameter("kernel wavenumber must be non-negative");
  auto kernel = [&](double xi) {
    const double arg = y * xi;
    const double tr = kind == Trig::Sin ? std::sin(arg) : std::cos(arg);
    return f_smooth(xi) * tr / std::pow(xi, decay_power);
  };
  if (y == 0.0) {
    if (kind == Trig::Sin) return {};
    return integrate_semi_infinite(kernel, spec);
  }
  const double half = std::numbers::pi / y;
  const long start = spec.tail_cut > 0.0 ? static_cast<long>(std::ceil(spec.tail_cut / half)) : 8;
  return integrate_alternating(kernel, 0.0, half, start, spec);
}

}  // namespace obflow

#endif  // OBFLOW_QUADRATURE_HPP
