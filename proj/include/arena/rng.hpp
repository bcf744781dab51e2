#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace arena {

// splitmix64 step; used to derive independent stream seeds from a root seed.
inline std::uint64_t split_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t split_seed(std::uint64_t a, std::uint64_t b) {
  return split_seed(split_seed(a) ^ (0x9e3779b97f4a7c15ULL * (b + 1)));
}

inline std::uint64_t split_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return split_seed(split_seed(a, b), c);
}

// Uniform double in [0, 1). Hand-rolled on top of mt19937_64 because the
// std:: distributions are not bit-stable across standard library versions.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Integer in [lo, hi] by rejection-free scaling; bit-stable everywhere.
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

// Inverse-CDF draw from explicit weights (need not be normalized).
inline std::size_t sample_categorical(std::mt19937_64& rng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

}  // namespace arena
