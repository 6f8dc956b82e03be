#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ccrn {

// A point estimate with its standard error and the number of samples that
// produced it.
struct SimEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t n = 0;
};

// Mean and standard error of a set of (approximately independent) sample
// means, e.g. replication or batch means.
inline SimEstimate pool_means(const std::vector<double>& xs) {
  SimEstimate e;
  e.n = xs.size();
  if (xs.empty()) return e;
  double s = 0.0;
  for (double x : xs) s += x;
  e.mean = s / xs.size();
  if (xs.size() < 2) return e;
  double ss = 0.0;
  for (double x : xs) ss += (x - e.mean) * (x - e.mean);
  e.std_err = std::sqrt(ss / (xs.size() - 1) / xs.size());
  return e;
}

inline SimEstimate binomial_estimate(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("binomial_estimate: no trials");
  SimEstimate e;
  e.n = trials;
  e.mean = static_cast<double>(hits) / trials;
  e.std_err = std::sqrt(e.mean * (1.0 - e.mean) / trials);
  return e;
}

inline double z_score(const SimEstimate& e, double reference) {
  if (e.std_err == 0.0) return e.mean == reference ? 0.0 : INFINITY;
  return (e.mean - reference) / e.std_err;
}

}  // namespace ccrn
