#pragma once

// Counter-based random streams. Every draw is a pure function of
// (seed, stream, counter), so each (entity, purpose) pair gets an
// independent stream and the draw order inside a slot is irrelevant to
// reproducibility.

#include <cmath>
#include <cstdint>

namespace ccrn::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
  std::uint64_t z = mix64(seed + kGolden * (stream + 1));
  return mix64(z + kGolden * (counter + 1));
}

// Uniform in [0, 1) from 53 high bits.
inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) {
  return uniform01(hash3(seed, stream, counter));
}

// Exponential with the given mean (channel power gains are exponential for
// Rayleigh envelopes).
inline double exponential(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter, double mean) {
  return -mean * std::log1p(-uniform01(seed, stream, counter));
}

}  // namespace ccrn::rng
