#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "obflow/quadrature.hpp"

using namespace obflow;

TEST(GaussKronrod, ExactForPolynomials) {
  // The 21-point Kronrod rule integrates degree 31 exactly.
  for (int n = 0; n <= 31; ++n) {
    const auto r = gauss_kronrod21([n](double x) { return std::pow(x, n); }, 0.0, 1.0);
    EXPECT_NEAR(r.value, 1.0 / (n + 1), 1e-15) << "n=" << n;
  }
}

TEST(GaussKronrod, RejectsNonFinite) {
  EXPECT_THROW(gauss_kronrod21([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0), NonFiniteIntegrand);
  EXPECT_THROW(gauss_kronrod21([](double) { return std::nan(""); }, 0.0, 1.0), NonFiniteIntegrand);
}

TEST(Adaptive, KnownIntegrals) {
  const QuadratureSpec spec;
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec).value, 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, spec).value, -1.0, 1e-9);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::cos(50.0 * x); }, 0.0, 2.0, spec).value,
              std::sin(100.0) / 50.0, 1e-11);
  const auto z = integrate_adaptive([](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }, 0.0,
                                    std::numbers::pi, spec);
  EXPECT_NEAR(z.value.real(), 0.0, 1e-13);
  EXPECT_NEAR(z.value.imag(), 2.0, 1e-13);
}

TEST(Adaptive, ReportsErrorAndPanels) {
  const QuadratureSpec spec;
  const auto r = integrate_adaptive([](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0, spec);
  EXPECT_NEAR(r.value, 0.4 * std::atan(5.0), 1e-12);
  EXPECT_GE(r.panels_used, 1);
  EXPECT_LE(r.err_estimate, 1e-9 * std::abs(r.value) + 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(Adaptive, OscillationHintSplitsRange) {
  QuadratureSpec spec;
  spec.oscillation_period = 0.1;
  std::vector<Interval> leaves;
  integrate_adaptive([](double x) { return std::sin(60.0 * x); }, 0.0, 1.0, spec, &leaves);
  EXPECT_GE(leaves.size(), 10u);
  const auto again = integrate_on([](double x) { return std::sin(60.0 * x); }, leaves);
  EXPECT_NEAR(again.value, (1.0 - std::cos(60.0)) / 60.0, 1e-12);
}

TEST(Adaptive, BudgetExhaustionReturnsBestEstimate) {
  QuadratureSpec spec;
  spec.max_panels = 3;
  spec.rel_tol = 1e-14;
  const auto r = integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, spec);
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.roundoff_limited);
  EXPECT_LE(r.panels_used, 3);
  EXPECT_GT(r.err_estimate, 1e-14 * std::abs(r.value));
}

TEST(Adaptive, RefinementMonotone) {
  // Halving rel_tol never moves the result further from the exact value.
  auto f = [](double x) { return std::sqrt(x) * std::cos(9.0 * x); };
  auto spec = [](double tol) {
    QuadratureSpec s;
    s.rel_tol = tol;
    s.abs_tol = 1e-300;
    return s;
  };
  const double exact = integrate_adaptive(f, 0.0, 2.0, spec(1e-15)).value;
  double prev = std::numeric_limits<double>::infinity();
  for (double tol = 1e-3; tol > 1e-12; tol *= 0.5) {
    const double err = std::abs(integrate_adaptive(f, 0.0, 2.0, spec(tol)).value - exact);
    EXPECT_LE(err, prev * (1.0 + 1e-9) + 1e-15) << "rel_tol=" << tol;
    prev = err;
  }
}

TEST(Adaptive, RoundoffLimitedIsFlagged) {
  QuadratureSpec spec;
  spec.rel_tol = 1e-300;
  spec.abs_tol = 1e-300;
  const auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, spec);
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
  EXPECT_TRUE(r.roundoff_limited);
  EXPECT_FALSE(r.converged);
}

TEST(Spec, Validates) {
  QuadratureSpec spec;
  spec.rel_tol = 0.0;
  EXPECT_THROW(spec.validate(), InvalidParameter);
  spec.rel_tol = 1e-8;
  spec.abs_tol = -1.0;
  EXPECT_THROW(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, spec), InvalidParameter);
}

TEST(SemiInfinite, KnownIntegrals) {
  const QuadratureSpec spec;
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, spec).value, 1.0, 1e-12);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, spec).value,
              0.5 * std::numbers::pi, 1e-10);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x * x); }, spec, 0.5).value,
              0.5 * std::sqrt(std::numbers::pi), 1e-12);
  QuadratureSpec cut = spec;
  cut.tail_cut = 3.0;
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return x * std::exp(-x); }, cut).value, 1.0, 1e-12);
  EXPECT_THROW(integrate_semi_infinite([](double x) { return x; }, spec, 0.0), InvalidParameter);
}

TEST(Euler, SumsAlternatingSeries) {
  // log 2 = 1 - 1/2 + 1/3 - ...
  std::vector<double> terms;
  for (int k = 0; k < 20; ++k) terms.push_back((k % 2 ? -1.0 : 1.0) / (k + 1));
  const auto [sum, last] = euler_sum(terms);
  EXPECT_NEAR(sum, std::log(2.0), 1e-7);
  EXPECT_LT(last, 1e-6);
}

TEST(Oscillatory, SineAndCosineTransforms) {
  const QuadratureSpec spec;
  // int_0^inf e^{-x} sin(yx) dx = y / (1 + y^2), int_0^inf e^{-x} cos(yx) dx = 1 / (1 + y^2).
  for (double y : {0.5, 2.0, 7.0}) {
    auto f = [](double x) { return std::exp(-x); };
    EXPECT_NEAR(integrate_oscillatory(f, y, Trig::Sin, 0, spec).value, y / (1 + y * y), 1e-10);
    EXPECT_NEAR(integrate_oscillatory(f, y, Trig::Cos, 0, spec).value, 1 / (1 + y * y), 1e-10);
  }
  // Slowly decaying: int_0^inf sin(yx)/x dx = pi/2.
  EXPECT_NEAR(integrate_oscillatory([](double) { return 1.0; }, 3.0, Trig::Sin, 1, spec).value,
              0.5 * std::numbers::pi, 1e-8);
  EXPECT_EQ(integrate_oscillatory([](double) { return 1.0; }, 0.0, Trig::Sin, 1, spec).value, 0.0);
  EXPECT_NEAR(integrate_oscillatory([](double x) { return std::exp(-x); }, 0.0, Trig::Cos, 0, spec).value, 1.0,
              1e-12);
  EXPECT_THROW(integrate_oscillatory([](double) { return 1.0; }, -1.0, Trig::Sin, 1, spec), InvalidParameter);
}

TEST(Alternating, FromOrigin) {
  const QuadratureSpec spec;
  // int_{1/2}^inf cos(pi x) / x dx = -Ci(pi/2).
  auto f = [](double x) { return std::cos(std::numbers::pi * x) / x; };
  const auto r = integrate_alternating(f, 0.5, 1.0, 4, spec);
  EXPECT_NEAR(r.value, -0.47200065143956865, 1e-9);
  EXPECT_THROW(integrate_alternating(f, 0.5, 0.0, 4, spec), InvalidParameter);
}
