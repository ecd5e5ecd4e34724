#ifndef OBFLOW_MODES_HPP
#define OBFLOW_MODES_HPP

/**
 * @file modes.hpp
 * @brief Per-wavenumber brackets of the exact Fourier-integral solution.
 *
 * With s = xi^2 the velocity and stress brackets are
 *
 *   Bu(xi,t)   = 1 - lambda [r2 r3 e^{r1 t} - r1 r4 e^{r2 t}] / (r2 - r1)
 *   Btau(xi,t) = 1 - [r4 e^{r2 t} - r3 e^{r1 t}] / (r2 - r1)
 *
 * and the defect G = nu t s - Bu drives the boundary-layer thickness and the
 * kinetic energy. On the real axis everything is rewritten through the
 * divided differences
 *
 *   Q = (e^{r1 t} - e^{r2 t}) / (r1 - r2),   P = (r1 e^{r1 t} - r2 e^{r2 t}) / (r1 - r2),
 *
 * which are even in sqrt(disc). That removes the 1/(r2 - r1) pole at the
 * double root and the 0/0 at xi -> 0:
 *
 *   Bu   = -expm1(r1 t) + (r1 + nu s) Q
 *   Btau = (1 + r1/(nu s)) (1 - P) + (r1/(nu s)) expm1(r1 t)
 *
 * For the contour tails the brackets are split back into the separate
 * exponentials c_k e^{r_k t}, each tagged with its asymptotic oscillation
 * frequency in xi.
 */

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "obflow/errors.hpp"
#include "obflow/model.hpp"

namespace obflow {

/// Which closed set of formulas evaluates the brackets.
enum class ModeBranch {
  TwoMode,      ///< lambda > 0: roots r1, r2 (Oldroyd-B, Maxwell, lambda == lambda_r)
  SecondGrade,  ///< lambda = 0, lambda_r > 0: single rate -nu s / (1 + alpha s)
  Newtonian,    ///< lambda = lambda_r = 0: rate -nu s
};

inline ModeBranch branch_for(const FluidParams& p, double t) {
  if (p.lambda() >= lambda_floor(t > 0.0 ? t : 1.0)) return ModeBranch::TwoMode;
  return p.lambda_r() > 0.0 ? ModeBranch::SecondGrade : ModeBranch::Newtonian;
}

struct BracketValues {
  double velocity = 0.0;
  double stress = 0.0;
  double defect = 0.0;
};

/// One exponential piece coef * e^{exponent} of a bracket evaluated off the real axis.
struct TailComponent {
  complex coef;
  complex exponent;
  double frequency = 0.0;  ///< coefficient of i*xi in the asymptotic phase

  complex value() const;
};

template <std::size_t N>
struct TailComponents {
  std::array<TailComponent, N> item{};
  std::size_t size = 0;

  void push(complex c, complex e, double f) { item[size++] = {c, e, f}; }
};

namespace detail {

inline constexpr double kUnderflowExponent = -700.0;
// e^{-45} ~ 3e-20: a mode this small is dropped from the tails.
inline constexpr double kNegligibleExponent = 45.0;

inline complex exp_clamped(complex z) {
  if (z.real() < kUnderflowExponent) return {0.0, 0.0};
  return std::exp(z);
}

inline double exp_clamped(double x) { return x < kUnderflowExponent ? 0.0 : std::exp(x); }

inline complex expm1(complex z) {
  if (z.real() < kUnderflowExponent) return {-1.0, 0.0};
  const double x = z.real();
  const double y = z.imag();
  const double half = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half * half;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

/// (e^z - 1 - z) / z^2, accurate near z = 0.
template <class T>
T phi2(T z) {
  if (std::abs(z) <= 1.0) {
    T term = T(0.5);
    T sum = term;
    for (int k = 1; k < 24; ++k) {
      term *= z / T(k + 2);
      sum += term;
    }
    return sum;
  }
  if constexpr (std::is_same_v<T, double>) {
    return (std::expm1(z) - z) / (z * z);
  } else {
    return (expm1(z) - z) / (z * z);
  }
}

/// cosh(sqrt(w)) and sinh(sqrt(w))/sqrt(w) for |w| <= 1, both even in sqrt(w).
inline void even_hyperbolic(complex w, complex& ch, complex& shc) {
  complex c_term = 1.0;
  complex s_term = 1.0;
  ch = c_term;
  shc = s_term;
  for (int k = 1; k < 14; ++k) {
    c_term *= w / double((2 * k - 1) * (2 * k));
    s_term *= w / double((2 * k) * (2 * k + 1));
    ch += c_term;
    shc += s_term;
  }
}

inline double checked_real(complex v, double scale, const char* what) {
  if (!(std::abs(v.imag()) <= 1e-10 * (std::abs(v.real()) + scale) + 1e-14)) {
    throw NonRealResult(std::string(what) + " has imaginary part " + std::to_string(v.imag()) +
                        " against real part " + std::to_string(v.real()));
  }
  return v.real();
}

}  // namespace detail

inline complex TailComponent::value() const {
  if (coef == complex(0.0, 0.0)) return coef;
  return coef * detail::exp_clamped(exponent);
}

/**
 * Brackets of one flow at a fixed time t, for any wavenumber.
 *
 * Construction fixes the branch and the contour-tail layout (tail start and
 * the modes that survive beyond it); evaluation is then a pure function of xi.
 */
class ModeKernel {
 public:
  ModeKernel(const FluidParams& p, double t, ModeBranch branch) : params_(p), t_(t), branch_(branch) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("mode brackets need t > 0");
    if (branch == ModeBranch::TwoMode && p.lambda() < lambda_floor(t)) {
      throw DegenerateLambda("relaxation time below floor for the two-mode formulas");
    }
    if (branch == ModeBranch::SecondGrade && !(p.lambda_r() > 0.0)) {
      throw InvalidParameter("second-grade branch needs lambda_r > 0");
    }
    layout_tail();
  }

  ModeKernel(const FluidParams& p, double t) : ModeKernel(p, t, branch_for(p, t)) {}

  const FluidParams& params() const { return params_; }
  double t() const { return t_; }
  ModeBranch branch() const { return branch_; }

  BracketValues at(double xi) const {
    switch (branch_) {
      case ModeBranch::TwoMode: return two_mode(xi);
      case ModeBranch::SecondGrade: return second_grade(xi);
      case ModeBranch::Newtonian: return newtonian(xi);
    }
    return {};
  }

  double velocity_bracket(double xi) const { return at(xi).velocity; }
  double stress_bracket(double xi) const { return at(xi).stress; }
  double defect(double xi) const { return at(xi).defect; }

  /// lim Bu / xi^2 as xi -> 0.
  double velocity_over_s_limit() const { return params_.nu() * t_; }

  /// lim Btau / xi^2 as xi -> 0.
  double stress_over_s_limit() const {
    const double nu = params_.nu();
    switch (branch_) {
      case ModeBranch::TwoMode: {
        const double lam = params_.lambda();
        return nu * t_ - (nu * lam - params_.alpha()) * -std::expm1(-t_ / lam);
      }
      case ModeBranch::SecondGrade: return nu * t_ + params_.alpha();
      case ModeBranch::Newtonian: return nu * t_;
    }
    return 0.0;
  }

  /// lim G / xi^4 as xi -> 0.
  double defect_over_s2_limit() const {
    const double nu = params_.nu();
    const double base = 0.5 * nu * nu * t_ * t_;
    switch (branch_) {
      case ModeBranch::TwoMode: {
        const double lam = params_.lambda();
        return base - nu * (nu * lam - params_.alpha()) * (t_ + lam * std::expm1(-t_ / lam));
      }
      case ModeBranch::SecondGrade: return base + nu * params_.alpha() * t_;
      case ModeBranch::Newtonian: return base;
    }
    return 0.0;
  }

  /// Real-axis point beyond which the contour-tail components are valid.
  double tail_start() const { return tail_start_; }

  /// Upper bound on the xi-frequency of bracket oscillations on [0, tail_start].
  double mode_frequency() const { return mode_frequency_; }

  TailComponents<3> velocity_tail(complex xi) const { return tail(xi, true); }
  TailComponents<3> stress_tail(complex xi) const { return tail(xi, false); }

  /// Components of G = nu t xi^2 - Bu.
  TailComponents<4> defect_tail(complex xi) const {
    const auto bu = velocity_tail(xi);
    TailComponents<4> out;
    out.push(params_.nu() * t_ * xi * xi, 0.0, 0.0);
    for (std::size_t k = 0; k < bu.size; ++k) out.push(-bu.item[k].coef, bu.item[k].exponent, bu.item[k].frequency);
    return out;
  }

 private:
  BracketValues two_mode(double xi) const {
    const double nu = params_.nu();
    const double lam = params_.lambda();
    const double alpha = params_.alpha();
    const double t = t_;
    const double s = xi * xi;
    const double b = 1.0 + alpha * s;
    const double disc = b * b - 4.0 * nu * lam * s;
    const complex root = std::sqrt(complex(disc, 0.0));
    const complex den = b + root;
    const complex r1 = -2.0 * nu * s / den;
    const complex rho1 = -2.0 / den;  // r1 / (nu s)
    const double disc_m1 = (2.0 * alpha - 4.0 * nu * lam) * s + alpha * alpha * s * s;
    const complex den_m2 = alpha * s + disc_m1 / (root + 1.0);
    const complex one_plus_rho1 = den_m2 / den;
    const complex r1_plus_nus = nu * s * one_plus_rho1;

    complex q;
    complex pdd;
    const double m = -b / (2.0 * lam);
    const complex w = disc * t * t / (4.0 * lam * lam);
    if (std::abs(w) <= 1.0) {
      complex ch;
      complex shc;
      detail::even_hyperbolic(w, ch, shc);
      const double em = detail::exp_clamped(m * t);
      q = em * t * shc;
      pdd = em * (ch + m * t * shc);
    } else {
      const complex r2 = disc < 0.0 ? std::conj(r1) : -den / (2.0 * lam);
      const complex e1 = detail::exp_clamped(r1 * t);
      const complex e2 = detail::exp_clamped(r2 * t);
      const complex diff = root / lam;
      q = (e1 - e2) / diff;
      pdd = (r1 * e1 - r2 * e2) / diff;
    }

    const complex z = r1 * t;
    const complex e1m1 = detail::expm1(z);
    const complex bu_a = -e1m1;
    const complex bu_b = r1_plus_nus * q;
    const complex bu = bu_a + bu_b;

    const complex bt_a = one_plus_rho1 * (1.0 - pdd);
    const complex bt_b = rho1 * e1m1;
    const complex bt = bt_a + bt_b;

    complex g;
    double g_scale;
    if (std::abs(z) <= 1.0) {
      const complex ga = z * z * detail::phi2(z);
      const complex gb = r1_plus_nus * (t - q);
      g = ga + gb;
      g_scale = std::abs(ga) + std::abs(gb);
    } else {
      g = nu * t * s - bu;
      g_scale = nu * t * s + std::abs(bu_a) + std::abs(bu_b);
    }

    BracketValues out;
    out.velocity = detail::checked_real(bu, std::abs(bu_a) + std::abs(bu_b), "velocity bracket");
    out.stress = detail::checked_real(bt, std::abs(bt_a) + std::abs(bt_b), "stress bracket");
    out.defect = detail::checked_real(g, g_scale, "velocity defect");
    return out;
  }

  BracketValues second_grade(double xi) const {
    const double nu = params_.nu();
    const double alpha = params_.alpha();
    const double s = xi * xi;
    const double b = 1.0 + alpha * s;
    const double z = -nu * s * t_ / b;
    const double em1 = std::expm1(z);
    const double frac = alpha * s / b;
    BracketValues out;
    out.velocity = -em1;
    out.stress = -em1 + (1.0 + em1) * frac;
    out.defect = z * z * detail::phi2(z) + nu * s * frac * t_;
    return out;
  }

  BracketValues newtonian(double xi) const {
    const double z = -params_.nu() * xi * xi * t_;
    BracketValues out;
    out.velocity = -std::expm1(z);
    out.stress = out.velocity;
    out.defect = z * z * detail::phi2(z);
    return out;
  }

  // Continuation of sqrt(disc) off the real axis, analytic for Re xi >= tail_start.
  complex continued_root(complex xi, complex s, complex b) const {
    const double nu = params_.nu();
    const double lam = params_.lambda();
    if (params_.alpha() > 0.0) {
      return b * std::sqrt(1.0 - 4.0 * nu * lam * s / (b * b));
    }
    const double s0 = 1.0 / (4.0 * nu * lam);
    return complex(0.0, 2.0 * std::sqrt(nu * lam)) * xi * std::sqrt(1.0 - s0 / s);
  }

  TailComponents<3> tail(complex xi, bool velocity) const {
    TailComponents<3> out;
    out.push(1.0, 0.0, 0.0);
    const double nu = params_.nu();
    const complex s = xi * xi;
    switch (branch_) {
      case ModeBranch::TwoMode: {
        if (!keep_first_ && !keep_second_) break;
        const double lam = params_.lambda();
        const complex b = 1.0 + params_.alpha() * s;
        const complex root = continued_root(xi, s, b);
        const complex den = b + root;
        const complex r1 = -2.0 * nu * s / den;
        const complex r2 = -den / (2.0 * lam);
        if (keep_first_) {
          const complex c1 = velocity ? lam * (nu * s + r2) / root : -(lam * r1 + 1.0) / root;
          out.push(c1, r1 * t_, first_frequency_);
        }
        if (keep_second_) {
          const complex c2 = velocity ? -lam * (nu * s + r1) / root : (lam * r2 + 1.0) / root;
          out.push(c2, r2 * t_, -first_frequency_);
        }
        break;
      }
      case ModeBranch::SecondGrade: {
        if (!keep_first_) break;
        const complex b = 1.0 + params_.alpha() * s;
        out.push(velocity ? complex(-1.0) : -1.0 / b, -nu * s * t_ / b, 0.0);
        break;
      }
      case ModeBranch::Newtonian: break;
    }
    return out;
  }

  void layout_tail() {
    using detail::kNegligibleExponent;
    const double nu = params_.nu();
    const double lam = params_.lambda();
    const double alpha = params_.alpha();
    const double t = t_;
    double s_min = 4.0 / (nu * t);
    keep_first_ = false;
    keep_second_ = false;
    first_frequency_ = 0.0;
    mode_frequency_ = 0.0;

    switch (branch_) {
      case ModeBranch::TwoMode: {
        const bool window = alpha == 0.0 || lam > params_.lambda_r();
        if (window && t / (2.0 * lam) < kNegligibleExponent) mode_frequency_ = t * std::sqrt(nu / lam);
        if (alpha == 0.0) {
          // Beyond xi^2 = 1/(nu lambda) both rates are m +- i omega with |e^{r t}| = e^{-t/(2 lambda)}.
          s_min = std::max(s_min, 1.0 / (nu * lam));
          if (t / (2.0 * lam) < kNegligibleExponent) {
            keep_first_ = keep_second_ = true;
            first_frequency_ = t * std::sqrt(nu / lam);
          }
          break;
        }
        // |e^{r2 t}| <= e^{-(1 + alpha s) t / (2 lambda)}.
        const double s_second = (2.0 * kNegligibleExponent * lam / t - 1.0) / alpha;
        s_min = std::max(s_min, s_second);
        if (nu * t / alpha > kNegligibleExponent) {
          // e^{r1 t} <= e^{-nu s t / (1 + alpha s)} also dies out: the tail is the constant term only.
          s_min = std::max(s_min, kNegligibleExponent / (nu * t - kNegligibleExponent * alpha));
        } else {
          keep_first_ = true;
          s_min = std::max({s_min, 2.0 / alpha, 32.0 * nu * lam / (alpha * alpha)});
        }
        break;
      }
      case ModeBranch::SecondGrade:
        if (nu * t / alpha > kNegligibleExponent) {
          s_min = std::max(s_min, kNegligibleExponent / (nu * t - kNegligibleExponent * alpha));
        } else {
          keep_first_ = true;
          s_min = std::max(s_min, 2.0 / alpha);
        }
        break;
      case ModeBranch::Newtonian: s_min = std::max(s_min, kNegligibleExponent / (nu * t)); break;
    }
    tail_start_ = std::sqrt(s_min);
  }

  FluidParams params_;
  double t_;
  ModeBranch branch_;
  double tail_start_ = 0.0;
  double mode_frequency_ = 0.0;
  double first_frequency_ = 0.0;
  bool keep_first_ = false;
  bool keep_second_ = false;
};

/// Velocity bracket of the exact solution at (xi, t); zero at t = 0.
inline double mode_bracket_velocity(double xi, double t, const FluidParams& p) {
  if (!(xi >= 0.0)) throw InvalidParameter("wavenumber must be non-negative");
  if (!(t >= 0.0)) throw InvalidParameter("time must be non-negative");
  if (t == 0.0) return 0.0;
  return ModeKernel(p, t).velocity_bracket(xi);
}

/// Stress bracket of the exact solution at (xi, t); zero at t = 0.
inline double mode_bracket_stress(double xi, double t, const FluidParams& p) {
  if (!(xi >= 0.0)) throw InvalidParameter("wavenumber must be non-negative");
  if (!(t >= 0.0)) throw InvalidParameter("time must be non-negative");
  if (t == 0.0) return 0.0;
  return ModeKernel(p, t).stress_bracket(xi);
}

}  // namespace obflow

#endif  // OBFLOW_MODES_HPP
