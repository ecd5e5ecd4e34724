#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "obflow/asymptotics.hpp"

using namespace obflow;

namespace {

const FlowConfig kUnit(1.0, 1.0);

AsymptoticOptions difference() {
  AsymptoticOptions o;
  o.correction = Correction::RelaxationMinusRetard;
  return o;
}

}  // namespace

TEST(Smallness, Report) {
  const auto r = smallness(10.0, FluidParams(1.0, 1.0, 0.5, 0.2));
  EXPECT_DOUBLE_EQ(r.eps_lambda, 0.05);
  EXPECT_DOUBLE_EQ(r.eps_retard, 0.02);
  EXPECT_DOUBLE_EQ(r.beta, 0.05);
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(smallness(1.0, FluidParams(1.0, 1.0, 0.5, 0.2)).valid);
  EXPECT_THROW(smallness(0.0, FluidParams(1.0, 1.0, 0.5, 0.2)), InvalidParameter);
}

TEST(ExpansionTerms, AgreeWithExactRootsToSecondOrder) {
  // The truncation error of each term is O(lambda^2); halving lambda divides it by about four.
  const double t = 2.0, xi = 0.7;
  double prev[6] = {};
  for (int k = 0; k < 4; ++k) {
    const double lam = 0.02 / (1 << k);
    const FluidParams p(1.0, 1.0, lam, 0.3 * lam);
    const auto a = expansion_terms(xi, t, p);
    const auto b = exact_expansion_terms(xi, t, p);
    const double err[6] = {std::abs(a.radical - b.radical),
                           std::abs(a.inv_radical - b.inv_radical),
                           std::abs(a.e_r1t - b.e_r1t),
                           std::abs(a.r3_over_gap - b.r3_over_gap),
                           std::abs(a.r3_e_over_gap - b.r3_e_over_gap),
                           std::abs(a.lam_r2r3_e_over_gap - b.lam_r2r3_e_over_gap)};
    for (int i = 0; i < 6; ++i) {
      EXPECT_LT(err[i], 5.0 * lam * lam) << "term " << i << " lambda " << lam;
      if (k > 0 && prev[i] > 1e-13) {
        EXPECT_GT(prev[i] / err[i], 3.0) << "term " << i << " lambda " << lam;
      }
      prev[i] = err[i];
    }
  }
}

TEST(Approximation, ReducesToNewtonian) {
  const FluidParams n = FluidParams::newtonian(1.0);
  for (double y : {0.0, 1.0, 2.0}) {
    EXPECT_DOUBLE_EQ(velocity_approx({y, 3.0}, n, kUnit), velocity_newtonian_closed({y, 3.0}, kUnit, 1.0));
    EXPECT_DOUBLE_EQ(shear_approx({y, 3.0}, n, kUnit), shear_newtonian_closed({y, 3.0}, kUnit, n));
  }
}

TEST(Approximation, WallValues) {
  const FluidParams p(1.0, 1.0, 0.5, 0.0);
  const double t = 10.0;
  EXPECT_DOUBLE_EQ(velocity_approx({0.0, t}, p, kUnit), t);
  const double tau_n = shear_newtonian_closed({0.0, t}, kUnit, p);
  EXPECT_NEAR(shear_approx({0.0, t}, p, kUnit), tau_n + 0.5 * std::sqrt(t / std::numbers::pi) * 0.5 / t, 1e-14);
}

TEST(Approximation, IntegralFormsMatchClosedForms) {
  for (const FluidParams& p : {FluidParams(1.0, 1.0, 0.5, 0.0), FluidParams(0.7, 1.2, 0.4, 0.1)}) {
    for (auto opts : {AsymptoticOptions{}, difference()}) {
      for (double y : {0.0, 0.5, 2.0}) {
        const FieldPoint pt(y, 10.0);
        EXPECT_NEAR(velocity_approx_integral(pt, p, kUnit, opts), velocity_approx(pt, p, kUnit, opts), 1e-9);
        EXPECT_NEAR(shear_approx_integral(pt, p, kUnit, opts), shear_approx(pt, p, kUnit, opts), 1e-9);
      }
    }
  }
}

TEST(Approximation, RegimeIsEnforced) {
  const FluidParams p(1.0, 1.0, 0.5, 0.0);
  EXPECT_THROW(velocity_approx({1.0, 1.0}, p, kUnit), OutsideAsymptoticRegime);
  EXPECT_THROW(shear_approx({1.0, 0.0}, p, kUnit), OutsideAsymptoticRegime);
  AsymptoticOptions loose;
  loose.allow_outside = true;
  EXPECT_NO_THROW(velocity_approx({1.0, 1.0}, p, kUnit, loose));
}

TEST(Approximation, DifferenceFormVanishesForEqualTimes) {
  const FluidParams p(1.0, 1.0, 0.5, 0.5);
  const FieldPoint pt(1.0, 10.0);
  EXPECT_DOUBLE_EQ(velocity_approx(pt, p, kUnit, difference()), velocity_newtonian_closed(pt, kUnit, 1.0));
}

TEST(OrderStudy, MaxwellIsSecondOrder) {
  const auto steps = order_study({1.0, 10.0}, 1.0, 1.0, kUnit, 0.8, 3);
  ASSERT_EQ(steps.size(), 4u);
  EXPECT_DOUBLE_EQ(steps[0].lambda, 0.8);
  EXPECT_DOUBLE_EQ(steps[3].lambda, 0.1);
  for (std::size_t k = 1; k < steps.size(); ++k) {
    EXPECT_GE(steps[k].u_ratio, 3.2);
    EXPECT_LE(steps[k].u_ratio, 4.8);
    EXPECT_GE(steps[k].tau_ratio, 3.2);
    EXPECT_LE(steps[k].tau_ratio, 4.8);
  }
}

TEST(OrderStudy, RetardationNeedsDifferenceForm) {
  // With lambda_r = lambda / 2 the lambda-only correction leaves an O(lambda) error.
  const auto printed = order_study({1.0, 10.0}, 1.0, 1.0, kUnit, 0.8, 2, 0.5);
  const auto diff = order_study({1.0, 10.0}, 1.0, 1.0, kUnit, 0.8, 2, 0.5, difference());
  for (std::size_t k = 1; k < printed.size(); ++k) {
    EXPECT_LT(printed[k].u_ratio, 2.5);
    EXPECT_GT(diff[k].u_ratio, 3.2);
    EXPECT_LT(diff[k].u_ratio, 4.8);
  }
}

TEST(OrderStudy, Validates) {
  EXPECT_THROW(order_study({1.0, 10.0}, 1.0, 1.0, kUnit, 0.0, 3), InvalidParameter);
  EXPECT_THROW(order_study({1.0, 10.0}, 1.0, 1.0, kUnit, 0.8, -1), InvalidParameter);
}
