#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "obflow/special_functions.hpp"

using obflow::ierfc;

namespace {

struct Row {
  double x, e0, e1, e2;
};

// 40-digit reference values.
constexpr Row kTable[] = {
    {-2.0, 1.9953222650189527, 4.0009780227149515, 4.4998085889696897},
    {-0.5, 1.5204998778130465, 1.1996412283742457, 0.68003527654682305},
    {0.0, 1.0, 0.56418958354775629, 0.25},
    {0.1, 0.8875370839817151, 0.46982209499629696, 0.19839316624561393},
    {0.5, 0.47950012218695346, 0.19964122837424567, 0.069964723453176949},
    {0.9, 0.20309178757716786, 0.068201678300730257, 0.020082191658963348},
    {1.0, 0.15729920705028513, 0.050254541660012221, 0.014197530932565172},
    {1.5, 0.033894853524689273, 0.0086228643247807764, 0.002006565137586736},
    {3.0, 2.2090496998585441e-5, 3.3550349776176028e-6, 4.900717832199561e-7},
    {6.0, 2.1519736712498913e-17, 1.7466416874697628e-18, 1.4000911571544e-19},
    {12.0, 1.3562611692059042e-64, 5.6125089023169516e-66, 2.314758162458956e-67},
    {26.0, 5.6631924088561428e-296, 1.08747033053763e-297, 2.0866725151166879e-299},
};

}  // namespace

TEST(Ierfc, MatchesReferenceTable) {
  for (const auto& r : kTable) {
    EXPECT_NEAR(ierfc(r.x, 0u), r.e0, 1e-14 * r.e0) << "x=" << r.x;
    EXPECT_NEAR(ierfc(r.x, 1u), r.e1, 1e-13 * r.e1) << "x=" << r.x;
    EXPECT_NEAR(ierfc(r.x, 2u), r.e2, 1e-13 * r.e2) << "x=" << r.x;
  }
}

TEST(Ierfc, ValuesAtZero) {
  EXPECT_DOUBLE_EQ(ierfc(0.0, 0u), 1.0);
  EXPECT_DOUBLE_EQ(ierfc(0.0, 1u), std::numbers::inv_sqrtpi);
  EXPECT_DOUBLE_EQ(ierfc(0.0, 2u), 0.25);
}

TEST(Ierfc, ErfcReflection) {
  for (double x = 0.0; x < 5.0; x += 0.37) {
    EXPECT_NEAR(obflow::erfc(x) + obflow::erfc(-x), 2.0, 1e-15);
  }
}

TEST(Ierfc, RecurrenceHolds) {
  for (double x = -3.0; x < 8.0; x += 0.13) {
    const double lhs = 4.0 * ierfc(x, 2u);
    const double rhs = ierfc(x, 0u) - 2.0 * x * ierfc(x, 1u);
    EXPECT_NEAR(lhs, rhs, 1e-13 * std::max(std::abs(lhs), std::abs(ierfc(x, 0u)))) << "x=" << x;
  }
}

TEST(Ierfc, ContinuousAcrossBranchSwitch) {
  for (unsigned n = 1; n <= 2; ++n) {
    const double below = ierfc(std::nextafter(1.0, 0.0), n);
    const double above = ierfc(1.0, n);
    EXPECT_NEAR(below, above, 1e-14 * above);
  }
}

TEST(Ierfc, DerivativeIsLowerOrder) {
  for (unsigned n = 1; n <= 2; ++n) {
    for (double x = -1.0; x <= 4.0; x += 0.25) {
      const double h = 1e-4;
      const double d = (ierfc(x - 2 * h, n) - 8 * ierfc(x - h, n) + 8 * ierfc(x + h, n) - ierfc(x + 2 * h, n)) /
                       (12 * h);
      EXPECT_NEAR(d, -ierfc(x, n - 1), 1e-9 * std::max(1.0, ierfc(x, n - 1))) << "n=" << n << " x=" << x;
    }
  }
}

TEST(Ierfc, UnderflowsToZero) {
  EXPECT_EQ(ierfc(40.0, 2u), 0.0);
  EXPECT_EQ(ierfc(std::numeric_limits<double>::infinity(), 1u), 0.0);
}

TEST(Ierfc, RejectsHigherOrders) {
  EXPECT_THROW(ierfc(0.3, 3u), obflow::UnsupportedOrder);
  EXPECT_THROW(ierfc(0.3, obflow::ErfcOrder{7}), obflow::Error);
}
