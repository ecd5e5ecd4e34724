#ifndef OBFLOW_MODEL_HPP
#define OBFLOW_MODEL_HPP

/**
 * @file model.hpp
 * @brief Material constants, flow configuration, model taxonomy and the
 *        per-wavenumber spectral roots of the startup problem.
 *
 * The shear flow over a plate moving with u(0,t) = A t reduces the
 * Oldroyd-B constitutive law to the scalar pair
 *
 *   (1 + lambda d_t) tau = mu (1 + lambda_r d_t) d_y u,    rho d_t u = d_y tau,
 *
 * whose Fourier-sine modes decay with the two rates r1, r2 solving
 * lambda r^2 + (1 + alpha xi^2) r + nu xi^2 = 0, alpha = nu lambda_r.
 */

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "obflow/errors.hpp"

namespace obflow {

using complex = std::complex<double>;

/// Material constants of an incompressible Oldroyd-B fluid.
class FluidParams {
 public:
  FluidParams(double nu, double rho, double lambda, double lambda_r)
      : nu_(nu), rho_(rho), lambda_(lambda), lambda_r_(lambda_r) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidParameter("nu must be positive and finite");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidParameter("rho must be positive and finite");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("lambda must be non-negative");
    if (!(lambda_r >= 0.0) || !std::isfinite(lambda_r)) throw InvalidParameter("lambda_r must be non-negative");
    mu_ = rho * nu;
    alpha_ = nu * lambda_r;
  }

  static FluidParams newtonian(double nu, double rho = 1.0) { return {nu, rho, 0.0, 0.0}; }

  double nu() const { return nu_; }
  double rho() const { return rho_; }
  double mu() const { return mu_; }
  double lambda() const { return lambda_; }
  double lambda_r() const { return lambda_r_; }
  double alpha() const { return alpha_; }

  FluidParams with_lambda(double lambda) const { return {nu_, rho_, lambda, lambda_r_}; }
  FluidParams with_lambda_r(double lambda_r) const { return {nu_, rho_, lambda_, lambda_r}; }

 private:
  double nu_;
  double rho_;
  double mu_;
  double lambda_;
  double lambda_r_;
  double alpha_;
};

enum class FluidModel { OldroydB, Maxwell, SecondGrade, Newtonian };

inline std::string_view to_string(FluidModel m) {
  switch (m) {
    case FluidModel::OldroydB: return "oldroyd-b";
    case FluidModel::Maxwell: return "maxwell";
    case FluidModel::SecondGrade: return "second-grade";
    case FluidModel::Newtonian: return "newtonian";
  }
  return "unknown";
}

/// Relative tolerance used to decide lambda == lambda_r.
inline constexpr double kEqualTimesTolerance = 1e-12;

inline FluidModel classify(const FluidParams& p) {
  const double lam = p.lambda();
  const double ret = p.lambda_r();
  if (std::abs(lam - ret) <= kEqualTimesTolerance * std::max(lam, ret)) return FluidModel::Newtonian;
  if (ret == 0.0) return FluidModel::Maxwell;
  if (lam == 0.0) return FluidModel::SecondGrade;
  return FluidModel::OldroydB;
}

/// Plate acceleration A and the x-extent l of the energetic control volume.
struct FlowConfig {
  double accel = 1.0;
  double slab_length = 1.0;

  FlowConfig() = default;
  FlowConfig(double a, double l) : accel(a), slab_length(l) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidParameter("plate acceleration must be non-negative");
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidParameter("slab length must be positive");
  }
};

/// Smallest relaxation time accepted by the two-mode formulas.
inline double lambda_floor(double t_scale) { return 1e-9 * t_scale; }

/// Relative discriminant threshold below which r1 and r2 are treated as a double root.
inline constexpr double kDegeneracyThreshold = 1e-10;

struct SpectralRoots {
  double xi = 0.0;
  double disc = 0.0;
  complex r1, r2, r3, r4;
  bool degenerate = false;
};

/**
 * Rates of the two viscoelastic modes at wavenumber xi.
 *
 * The square root is the principal branch, so Re(r1) >= Re(r2) and both are
 * non-positive. r1 is formed from the cancellation-free Vieta quotient
 * -2 nu xi^2 / (1 + alpha xi^2 + sqrt(disc)).
 */
inline SpectralRoots spectral_roots(double xi, const FluidParams& p, double t_scale = 1.0) {
  if (!(xi >= 0.0)) throw InvalidParameter("wavenumber must be non-negative");
  if (p.lambda() < lambda_floor(t_scale)) {
    throw DegenerateLambda("relaxation time below floor; use the second-grade or Newtonian path");
  }
  const double s = xi * xi;
  const double b = 1.0 + p.alpha() * s;
  const double lam = p.lambda();

  SpectralRoots out;
  out.xi = xi;
  out.disc = b * b - 4.0 * p.nu() * lam * s;
  const complex root = std::sqrt(complex(out.disc, 0.0));
  const complex den = b + root;
  out.r1 = -2.0 * p.nu() * s / den;
  out.r2 = -den / (2.0 * lam);
  out.r3 = out.r1 + 1.0 / lam;
  out.r4 = out.r2 + 1.0 / lam;
  out.degenerate = std::abs(out.disc) < kDegeneracyThreshold * b * b;
  return out;
}

}  // namespace obflow

#endif  // OBFLOW_MODEL_HPP
