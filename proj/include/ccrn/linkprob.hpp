#pragma once

// Closed-form success probabilities for the four link events: the D-OSTBC
// assisted PU link, the best-relay assisted PU link, PU-to-SU-source
// reception and SU-to-SU-destination delivery, plus the density of the
// difference of two Gamma variables that underlies the first two.
//
// The two assisted-link derivations use the same rate symbols with
// different meanings, so each function builds its own parameter bundle
// from SystemConfig and the symbols never leave this file.

#include <cmath>
#include <stdexcept>

#include "ccrn/model.hpp"
#include "ccrn/specfun.hpp"

namespace ccrn::linkprob {

struct GammaDiffParams {
  int m;          // shape of X (positive part)
  double beta1;   // rate of X
  int n;          // shape of Y (subtracted part)
  double beta2;   // rate of Y

  void validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("gamma shapes must be >= 1");
    if (!(beta1 > 0.0) || !(beta2 > 0.0))
      throw std::invalid_argument("gamma rates must be positive");
  }
};

struct DirectLinkParams {
  double c;       // threshold offset, beta * sigma_N^2
  double beta3;   // rate of the direct/assisting exponential term

  void validate() const {
    if (!(c >= 0.0)) throw std::invalid_argument("c must be >= 0");
    if (!(beta3 > 0.0)) throw std::invalid_argument("beta3 must be positive");
  }
};

// Density of Z = X - Y with X ~ Gamma(m, beta1), Y ~ Gamma(n, beta2).
inline double gamma_diff_pdf(double z, const GammaDiffParams& p) {
  p.validate();
  const double pref = std::pow(p.beta1, p.m) * std::pow(p.beta2, p.n) /
                      (specfun::gamma_int(p.m) * specfun::gamma_int(p.n));
  const double bsum = p.beta1 + p.beta2;
  double sum = 0.0;
  if (z >= 0.0) {
    for (int j = 0; j <= p.m - 1; ++j)
      sum += specfun::binom(p.m - 1, j) * std::pow(z, j) *
             specfun::gamma_int(p.m + p.n - 1 - j) /
             std::pow(bsum, p.m + p.n - 1 - j);
    return pref * std::exp(-p.beta1 * z) * sum;
  }
  for (int j = 0; j <= p.n - 1; ++j)
    sum += specfun::binom(p.n - 1, j) * std::pow(-z, j) *
           specfun::gamma_int(p.m + p.n - 1 - j) /
           std::pow(bsum, p.m + p.n - 1 - j);
  return pref * std::exp(p.beta2 * z) * sum;
}

namespace detail {

// (1 - e^{-y}) / y, continuous through y = 0.
inline double one_minus_exp_over(double y) {
  if (y == 0.0) return 1.0;
  return -std::expm1(-y) / y;
}

inline bool rates_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

}  // namespace detail

// Success probability of the assisted PU transmission with n co-transmitting
// SU relays (received powers add) and m interfering SUs.
inline double success_ostbc(int n, int m, const SystemConfig& cfg) {
  if (n < 0 || m < 0) throw std::invalid_argument("success_ostbc: negative count");
  if (n + m > cfg.L) throw std::invalid_argument("success_ostbc: n + m exceeds L");
  const double c = cfg.beta * cfg.sigma_N2;
  const double beta1 = 1.0 / (cfg.beta * cfg.P_S * cfg.channels.sigma_SD2);
  const double beta2 = 1.0 / (cfg.P_S * cfg.channels.sigma_SD2);
  const double beta3 = 1.0 / (cfg.P_P * cfg.channels.sigma_PD2);

  if (n == 0) {
    // direct transmission under m interferers
    return std::exp(-beta3 * c) * std::pow(1.0 + beta3 / beta1, -m);
  }

  if (m == 0) {
    // no interference: one Gamma(n) assist term against the threshold
    const double x = detail::rates_equal(beta2, beta3) ? 0.0 : (beta2 - beta3) * c;
    return specfun::upper_gamma_int(n, beta2 * c) / specfun::gamma_int(n) +
           std::exp(-beta3 * c) * std::pow(beta2, n) / specfun::gamma_int(n) *
               std::pow(c, n) * specfun::lower_gamma_ratio(n, x);
  }

  // general case: three pieces of the integral against the Gamma-difference
  // density, split at -c and 0
  const double pref = std::pow(beta1, m) * std::pow(beta2, n) /
                      (specfun::gamma_int(m) * specfun::gamma_int(n));
  const double bsum = beta1 + beta2;
  const double xa2 = detail::rates_equal(beta2, beta3) ? 0.0 : (beta2 - beta3) * c;
  double i1 = 0.0, i2 = 0.0, i3 = 0.0;
  for (int j = 0; j <= n - 1; ++j) {
    const double w = specfun::binom(n - 1, j) *
                     specfun::gamma_int(m + n - 1 - j) /
                     std::pow(bsum, m + n - 1 - j);
    i1 += w * specfun::upper_gamma_int(j + 1, beta2 * c) / std::pow(beta2, j + 1);
    i2 += w * std::pow(c, j + 1) * specfun::lower_gamma_ratio(j + 1, xa2);
  }
  for (int j = 0; j <= m - 1; ++j) {
    const double w = specfun::binom(m - 1, j) *
                     specfun::gamma_int(m + n - 1 - j) /
                     std::pow(bsum, m + n - 1 - j);
    i3 += w * specfun::gamma_int(j + 1) / std::pow(beta1 + beta3, j + 1);
  }
  const double eb3c = std::exp(-beta3 * c);
  return pref * (i1 + eb3c * i2 + eb3c * i3);
}

// Success probability when only the best of n candidate relays co-transmits
// with the PU and m SUs interfere. The two integral constants here differ
// from a well-known printed form: direct integration of the density adds a
// (beta1+beta2)^{-m} factor to the first and puts beta1, not beta2, in the
// denominator of the second. The quadrature oracle adjudicates both.
inline double success_best_relay(int n, int m, const SystemConfig& cfg) {
  if (n < 1) throw std::invalid_argument("success_best_relay: n must be >= 1");
  if (m < 0 || n + m > cfg.L)
    throw std::invalid_argument("success_best_relay: bad n, m");
  const double c = cfg.beta * cfg.sigma_N2;
  const double beta1 = 1.0 / (cfg.beta * cfg.P_S * cfg.channels.sigma_SD2);
  const double beta2 = 1.0 / (cfg.P_P * cfg.channels.sigma_PD2);
  const double beta3 = 1.0 / (cfg.P_S * cfg.channels.sigma_SD2);

  double ubar = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double coef = specfun::binom(n, j) * sign * std::exp(-j * beta3 * c);
    if (m == 0) {
      ubar += coef * beta2 * c * detail::one_minus_exp_over((beta2 - j * beta3) * c);
      continue;
    }
    const double ib1 = std::pow(beta1, m) * beta2 /
                       std::pow(beta1 + beta2, m) * c *
                       detail::one_minus_exp_over((beta2 - j * beta3) * c);
    double ib2 = 0.0;
    for (int i = 0; i <= m - 1; ++i)
      ib2 += specfun::binom(m - 1, i) * specfun::gamma_int(m - i) /
             std::pow(beta1 + beta2, m - i) * specfun::gamma_int(i + 1) /
             std::pow(beta1 + j * beta3, i + 1);
    ib2 *= std::pow(beta1, m) * beta2 / specfun::gamma_int(m);
    ubar += coef * (ib1 + ib2);
  }
  return 1.0 - ubar;
}

// W(m): PU source to a silent SU source under m interfering SUs.
inline double su_reception_prob(int m, const SystemConfig& cfg) {
  if (m < 0 || m > cfg.L - 1)
    throw std::invalid_argument("su_reception_prob: m out of range");
  const double ratio =
      cfg.beta * cfg.P_S * cfg.channels.sigma_SS2 / (cfg.P_P * cfg.channels.sigma_PS2);
  return std::exp(-cfg.sigma_N2 * cfg.beta / (cfg.P_P * cfg.channels.sigma_PS2)) *
         std::pow(1.0 + ratio, -m);
}

// V(m): SU source to its destination when the PU is silent and m SUs
// interfere. Signal and interferers share P_S * sigma_SR2, so the
// interference-to-signal scale is just beta.
inline double su_success_prob(int m, const SystemConfig& cfg) {
  if (m < 0 || m > cfg.L - 1)
    throw std::invalid_argument("su_success_prob: m out of range");
  return std::exp(-cfg.sigma_N2 * cfg.beta / (cfg.P_S * cfg.channels.sigma_SR2)) *
         std::pow(1.0 + cfg.beta, -m);
}

}  // namespace ccrn::linkprob
