#ifndef OBFLOW_SPECIAL_FUNCTIONS_HPP
#define OBFLOW_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <numbers>

#include "obflow/errors.hpp"

namespace obflow {

/// Order n of the repeated integral i^n erfc; this library needs n <= 2.
struct ErfcOrder {
  unsigned n = 0;
};

inline double erfc(double x) { return std::erfc(x); }

namespace detail {

// i^n erfc(x) / i^{n-1} erfc(x) for x > 0, from the continued fraction of
// 2(n+1) i^{n+1} = i^{n-1} - 2x i^n run backwards (i^n erfc is its minimal solution).
inline double ierfc_ratio(double x, unsigned n) {
  const unsigned depth = 40 + static_cast<unsigned>(std::ceil(300.0 / (x * x)));
  double ratio = 0.0;
  for (unsigned k = depth; k > n; --k) {
    ratio = 1.0 / (2.0 * x + 2.0 * (k + 1) * ratio);
  }
  return 1.0 / (2.0 * x + 2.0 * (n + 1) * ratio);
}

}  // namespace detail

/**
 * Repeated integral of the complementary error function,
 * i^n erfc(x) = int_x^inf i^{n-1} erfc(s) ds with i^0 erfc = erfc.
 *
 * Small and negative arguments use the upward recurrence
 * 2n i^n erfc(x) = i^{n-2} erfc(x) - 2x i^{n-1} erfc(x); for x >= 1 that
 * recurrence cancels, so the ratios come from the backward continued fraction.
 */
inline double ierfc(double x, ErfcOrder order) {
  if (order.n > 2) throw UnsupportedOrder("i^n erfc is only provided for n <= 2");
  const double e0 = std::erfc(x);
  if (order.n == 0) return e0;
  if (x < 1.0) {
    const double e1 = std::exp(-x * x) * std::numbers::inv_sqrtpi - x * e0;
    if (order.n == 1) return e1;
    return 0.25 * (e0 - 2.0 * x * e1);
  }
  if (e0 == 0.0) return 0.0;
  const double e1 = e0 * detail::ierfc_ratio(x, 1);
  if (order.n == 1) return e1;
  return e1 * detail::ierfc_ratio(x, 2);
}

inline double ierfc(double x, unsigned n) { return ierfc(x, ErfcOrder{n}); }

}  // namespace obflow

#endif  // OBFLOW_SPECIAL_FUNCTIONS_HPP
