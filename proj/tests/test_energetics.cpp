#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "obflow/energetics.hpp"
#include "oracles.hpp"

using namespace obflow;

namespace {

const FlowConfig kUnit(1.0, 1.0);

EvalOptions with_model(ModelChoice m) {
  EvalOptions o;
  o.model = m;
  return o;
}

}  // namespace

TEST(NewtonianEnergetics, ClosedForms) {
  const auto n = newtonian_energetics_closed(1.0, FluidParams::newtonian(1.0), kUnit);
  const double k = 1.0 / std::sqrt(std::numbers::pi);
  EXPECT_NEAR(n.L, -2.0 * k, 1e-15);
  EXPECT_NEAR(n.Phi, 8.0 * (std::numbers::sqrt2 - 1.0) / 3.0 * k, 1e-15);
  EXPECT_NEAR(n.delta, 4.0 / 3.0 * k, 1e-15);
  EXPECT_NEAR(n.dEkin_dt + n.L + n.Phi, 0.0, 1e-15);
}

TEST(NewtonianEnergetics, QuadratureReproducesClosedForms) {
  const FluidParams p = FluidParams::newtonian(1.7, 0.9);
  const FlowConfig flow(1.3, 2.0);
  for (double t : {0.5, 1.0, 3.0}) {
    const auto n = newtonian_energetics_closed(t, p, flow);
    EXPECT_NEAR(wall_power(t, p, flow), n.L, 1e-9 * std::abs(n.L));
    EXPECT_NEAR(dissipation(t, p, flow), n.Phi, 1e-9 * n.Phi);
    EXPECT_NEAR(boundary_layer_thickness(t, p, flow), n.delta, 1e-9 * n.delta);
    EXPECT_NEAR(kinetic_energy_spectral(t, p, flow), n.E_kin, 1e-9 * n.E_kin);
  }
}

TEST(Energetics, WallPowerIsWallStressTimesPlateSpeed) {
  const FluidParams p(1.0, 1.0, 0.4, 0.0);
  for (double t : {0.5, 1.0, 5.0}) {
    const double ref = t * oracle::maxwell_wall_stress(t, {1.0, 1.0, 0.4, 0.0, 1.0});
    EXPECT_NEAR(wall_power(t, p, kUnit), ref, 1e-9 * std::abs(ref));
  }
  EXPECT_NEAR(wall_power(1.0, p, kUnit), -0.990153247147812, 1e-10);
}

TEST(Energetics, DirectRoutesAgree) {
  for (const FluidParams& p : {FluidParams(1, 1, 0.5, 0.2), FluidParams(1, 1, 0.4, 0.0), FluidParams(1, 1, 0.0, 0.4),
                               FluidParams(1, 1, 0.2, 0.5)}) {
    const double t = 1.0;
    const double L = wall_power(t, p, kUnit);
    EXPECT_NEAR(wall_power_direct(t, p, kUnit), L, 1e-8 * std::abs(L));
    const double d = boundary_layer_thickness(t, p, kUnit);
    EXPECT_NEAR(boundary_layer_thickness_direct(t, p, kUnit), d, 1e-7 * d);
    const double e = kinetic_energy_spectral(t, p, kUnit);
    EXPECT_NEAR(kinetic_energy(t, p, kUnit), e, 1e-7 * e);
  }
}

TEST(Energetics, ParsevalMatchesDoubleIntegral) {
  for (const FluidParams& p : {FluidParams(1, 1, 0.5, 0.2), FluidParams(1, 1, 0.0, 0.4)}) {
    const double phi = dissipation(1.0, p, kUnit);
    EXPECT_NEAR(dissipation_double_integral(1.0, p, kUnit), phi, 1e-6 * phi);
  }
}

TEST(Energetics, BalanceHoldsForAllModels) {
  for (const FluidParams& p : {FluidParams(1, 1, 0.5, 0.2), FluidParams(1, 1, 0.2, 0.5), FluidParams(1, 1, 0.4, 0.0),
                               FluidParams(1, 1, 0.0, 0.4), FluidParams(1, 1, 0, 0)}) {
    for (double t : {0.5, 2.0}) {
      const auto r = full_report(t, p, kUnit);
      EXPECT_LT(r.balance_residual, 1e-6) << "t=" << t;
      EXPECT_LT(r.L, 0.0);
      EXPECT_GT(r.Phi, 0.0);
      EXPECT_GT(r.delta, 0.0);
      EXPECT_GT(r.E_kin, 0.0);
      EXPECT_DOUBLE_EQ(r.dEkin_dt_balance, -r.L - r.Phi);
    }
  }
}

TEST(Energetics, BalanceRateForm) {
  const FluidParams p(1, 1, 0.5, 0.2);
  const double bal = kinetic_energy_rate(1.0, p, kUnit, RateForm::Balance);
  const double fd = kinetic_energy_rate(1.0, p, kUnit, RateForm::FiniteDifference);
  EXPECT_NEAR(bal, fd, 1e-7 * std::abs(bal));
}

TEST(Energetics, Scaling) {
  // L, Phi, E scale with rho l A^2; delta is independent of A, rho and l.
  const FluidParams p(1.0, 1.0, 0.5, 0.2);
  const FluidParams q(1.0, 2.5, 0.5, 0.2);
  const FlowConfig big(3.0, 0.5);
  const double factor = 2.5 * 0.5 * 9.0;
  EXPECT_NEAR(wall_power(1.0, q, big), factor * wall_power(1.0, p, kUnit), 1e-12 * factor);
  EXPECT_NEAR(dissipation(1.0, q, big), factor * dissipation(1.0, p, kUnit), 1e-12 * factor);
  EXPECT_NEAR(boundary_layer_thickness(1.0, q, big), boundary_layer_thickness(1.0, p, kUnit), 1e-14);
}

TEST(Energetics, OrderingAgainstNewtonian) {
  const FluidParams p(1.0, 1.0, 0.6, 0.2);
  const auto r = full_report(1.0, p, kUnit);
  const auto n = newtonian_energetics_closed(1.0, p, kUnit);
  EXPECT_LT(std::abs(r.L), std::abs(n.L));
  EXPECT_LT(r.Phi, n.Phi);
  EXPECT_LT(r.delta, n.delta);
}

TEST(Energetics, ModelChoiceApplies) {
  const FluidParams p(1.0, 1.0, 0.5, 0.2);
  EXPECT_NEAR(wall_power(1.0, p, kUnit, with_model(ModelChoice::Newtonian)), -2.0 / std::sqrt(std::numbers::pi),
              1e-12);
  EXPECT_DOUBLE_EQ(dissipation(1.0, p, kUnit, with_model(ModelChoice::Maxwell)),
                   dissipation(1.0, p.with_lambda_r(0.0), kUnit));
}

TEST(Energetics, RejectsNonPositiveTime) {
  const FluidParams p(1.0, 1.0, 0.5, 0.2);
  EXPECT_THROW(wall_power(0.0, p, kUnit), InvalidParameter);
  EXPECT_THROW(full_report(-1.0, p, kUnit), InvalidParameter);
  EXPECT_EQ(dissipation(1.0, p, FlowConfig(0.0, 1.0)), 0.0);
}
