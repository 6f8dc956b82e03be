#pragma once

// Integer-shape Gamma function family. The incomplete forms use the exact
// finite sums valid for negative arguments, which the usual continued
// fraction and series algorithms are not. All shapes are small positive
// integers here, so the sums are both exact and cheap.

#include <cmath>
#include <stdexcept>

namespace ccrn::specfun {

inline constexpr int kMaxShape = 170;  // (a-1)! overflows double beyond this

inline void check_shape(int a) {
  if (a < 1 || a > kMaxShape)
    throw std::domain_error("gamma shape parameter out of range [1,170]");
}

// Gamma(a) = (a-1)! for integer a.
inline double gamma_int(int a) {
  check_shape(a);
  double r = 1.0;
  for (int k = 2; k < a; ++k) r *= k;
  return r;
}

// Partial exponential sum e_a(x) = sum_{k=0}^{a-1} x^k / k!, computed with a
// running-term recurrence so no factorial is formed.
inline double exp_partial_sum(int a, double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < a; ++k) {
    term *= x / k;
    sum += term;
  }
  return sum;
}

// Upper incomplete Gamma(a, x) = (a-1)! e^{-x} e_a(x). Exact for integer a
// and any real x, including the analytic continuation to x < 0.
inline double upper_gamma_int(int a, double x) {
  check_shape(a);
  if (!std::isfinite(x)) throw std::domain_error("upper_gamma_int: x not finite");
  return gamma_int(a) * std::exp(-x) * exp_partial_sum(a, x);
}

// Lower incomplete gamma(a, x) = Gamma(a) - Gamma(a, x).
inline double lower_gamma_int(int a, double x) {
  check_shape(a);
  if (!std::isfinite(x)) throw std::domain_error("lower_gamma_int: x not finite");
  return gamma_int(a) * (1.0 - std::exp(-x) * exp_partial_sum(a, x));
}

// gamma(a, x) / x^a, which is finite at x = 0 (value 1/a). The subtraction
// form loses all precision for small |x|, so switch to the power series
// gamma(a,x)/x^a = sum_{k>=0} (-x)^k / (k! (a+k)) below |x| = 1e-4.
inline double lower_gamma_ratio(int a, double x) {
  check_shape(a);
  if (std::abs(x) < 1e-4) {
    double term = 1.0, sum = 1.0 / a;
    for (int k = 1; k < 30; ++k) {
      term *= -x / k;
      double add = term / (a + k);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return lower_gamma_int(a, x) / std::pow(x, a);
}

// Binomial coefficient. Exact-in-double multiplicative product for n <= 64,
// log-domain beyond that.
inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 64) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

}  // namespace ccrn::specfun
