#pragma once

// Independent numerical validators for the closed-form link probabilities.
// The quadrature routines integrate the defining integrals (success kernel
// times density), never the reduced finite-sum expressions, so a
// transcription error in linkprob cannot be reproduced here. Raw-SINR Monte
// Carlo closes the loop from the other side.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ccrn/estimate.hpp"
#include "ccrn/linkprob.hpp"
#include "ccrn/model.hpp"
#include "ccrn/rng.hpp"

namespace ccrn::oracle {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double tail_cut = 1e-16;  // stop the tail when a panel is this small vs the mass
};

namespace detail {

template <typename F>
double integrate_finite(F&& f, double a, double b, double tol) {
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, 15, tol, &err);
  if (!(std::isfinite(v)))
    throw std::runtime_error("quadrature produced a non-finite value");
  return v;
}

// Integrate f over [a, inf) for integrands with exponential decay of known
// rate: fixed-rule panels of doubling width until a panel's contribution
// falls below the tail cut of the accumulated mass.
template <typename F>
double integrate_tail(F&& f, double a, double decay_rate,
                      const QuadratureSpec& spec) {
  double width = 2.0 / decay_rate;
  double acc = 0.0;
  double lo = a;
  for (int k = 0; k < 200; ++k) {
    double piece = integrate_finite(f, lo, lo + width, spec.abs_tol);
    acc += piece;
    lo += width;
    width *= 2.0;
    if (k >= 2 && std::abs(piece) <=
                      std::max(spec.tail_cut * std::abs(acc), 1e-300))
      return acc;
  }
  throw std::runtime_error("tail integration budget exceeded");
}

inline double gamma_pdf(double x, int shape, double rate) {
  if (x < 0.0) return 0.0;
  return std::pow(rate, shape) / specfun::gamma_int(shape) *
         std::pow(x, shape - 1) * std::exp(-rate * x);
}

}  // namespace detail

// Quadrature evaluation of the assisted-link success probability
// Pr[W > c + X - Y]. For n, m >= 1 the three pieces are integrated against
// gamma_diff_pdf; the n = 0 and m = 0 cases integrate their own defining
// forms directly.
inline double ua_quadrature(int n, int m, const SystemConfig& cfg,
                            const QuadratureSpec& spec = {}) {
  if (n < 0 || m < 0) throw std::invalid_argument("ua_quadrature: negative count");
  const double c = cfg.beta * cfg.sigma_N2;
  const double beta1 = 1.0 / (cfg.beta * cfg.P_S * cfg.channels.sigma_SD2);
  const double beta2 = 1.0 / (cfg.P_S * cfg.channels.sigma_SD2);
  const double beta3 = 1.0 / (cfg.P_P * cfg.channels.sigma_PD2);

  if (n == 0 && m == 0) return std::exp(-beta3 * c);
  if (n == 0) {
    auto f = [&](double x) {
      return detail::gamma_pdf(x, m, beta1) * std::exp(-beta3 * (c + x));
    };
    return detail::integrate_tail(f, 0.0, beta1 + beta3, spec);
  }
  if (m == 0) {
    auto fy = [&](double y) { return detail::gamma_pdf(y, n, beta2); };
    auto fk = [&](double y) {
      return detail::gamma_pdf(y, n, beta2) * std::exp(-beta3 * (c - y));
    };
    double tail = 1.0 - detail::integrate_finite(fy, 0.0, c, spec.abs_tol);
    return tail + detail::integrate_finite(fk, 0.0, c, spec.abs_tol);
  }

  linkprob::GammaDiffParams p{m, beta1, n, beta2};
  auto fz = [&](double z) { return linkprob::gamma_diff_pdf(z, p); };
  double ia1 = detail::integrate_tail([&](double t) { return fz(-t); }, c,
                                      beta2, spec);
  double ia2 = detail::integrate_finite(
      [&](double z) { return std::exp(-beta3 * (c + z)) * fz(z); }, -c, 0.0,
      spec.abs_tol);
  double ia3 = detail::integrate_tail(
      [&](double z) { return std::exp(-beta3 * (c + z)) * fz(z); }, 0.0,
      beta1 + beta3, spec);
  return ia1 + ia2 + ia3;
}

// Quadrature evaluation of the best-relay success probability: integrates
// (1 - e^{-beta3 c} e^{-beta3 z})^n against the Gamma-difference density
// over [-c, inf) and returns the complement.
inline double ub_quadrature(int n, int m, const SystemConfig& cfg,
                            const QuadratureSpec& spec = {}) {
  if (n < 1) throw std::invalid_argument("ub_quadrature: n must be >= 1");
  if (m < 0) throw std::invalid_argument("ub_quadrature: negative m");
  const double c = cfg.beta * cfg.sigma_N2;
  const double beta1 = 1.0 / (cfg.beta * cfg.P_S * cfg.channels.sigma_SD2);
  const double beta2 = 1.0 / (cfg.P_P * cfg.channels.sigma_PD2);
  const double beta3 = 1.0 / (cfg.P_S * cfg.channels.sigma_SD2);

  auto kern = [&](double z) {
    return std::pow(-std::expm1(-beta3 * (c + z)), n);
  };
  if (m == 0) {
    // Z = -V with V exponential(beta2); all mass is on z <= 0
    auto f = [&](double z) { return kern(z) * beta2 * std::exp(beta2 * z); };
    return 1.0 - detail::integrate_finite(f, -c, 0.0, spec.abs_tol);
  }
  linkprob::GammaDiffParams p{m, beta1, 1, beta2};
  auto f = [&](double z) { return kern(z) * linkprob::gamma_diff_pdf(z, p); };
  double ubar = detail::integrate_finite(f, -c, 0.0, spec.abs_tol) +
                detail::integrate_tail(f, 0.0, beta1, spec);
  return 1.0 - ubar;
}

// Empirical Pr[SINR > beta] from raw channel draws. best_relay selects the
// max of the n candidate gains for the numerator instead of their sum.
inline SimEstimate sinr_monte_carlo(int n, int m, const SystemConfig& cfg,
                                    std::uint64_t samples, std::uint64_t seed,
                                    bool best_relay = false) {
  if (samples < 10000)
    throw std::invalid_argument("sinr_monte_carlo: need at least 1e4 samples");
  if (n < 0 || m < 0) throw std::invalid_argument("sinr_monte_carlo: bad n, m");
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    double num = cfg.P_P * rng::exponential(seed, 0, s, cfg.channels.sigma_PD2);
    if (best_relay) {
      double best = 0.0;
      for (int i = 0; i < n; ++i)
        best = std::max(best,
                        rng::exponential(seed, 1 + i, s, cfg.channels.sigma_SD2));
      num += cfg.P_S * best;
    } else {
      for (int i = 0; i < n; ++i)
        num += cfg.P_S * rng::exponential(seed, 1 + i, s, cfg.channels.sigma_SD2);
    }
    double den = cfg.sigma_N2;
    for (int j = 0; j < m; ++j)
      den += cfg.P_S * rng::exponential(seed, 100 + j, s, cfg.channels.sigma_SD2);
    if (num / den > cfg.beta) ++hits;
  }
  return binomial_estimate(hits, samples);
}

}  // namespace ccrn::oracle
