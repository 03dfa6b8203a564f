#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace ants {

// Seed mixing (splitmix64).  Used to derive independent stream seeds from a
// base seed so that per-seed / per-cell runs never share state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t s = base ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  return splitmix64(s);
}

// One uniform double in [0, 1) from the top 53 bits of the generator output.
inline double uniform01(std::mt19937_64& gen) {
  return double(gen() >> 11) * 0x1.0p-53;
}

// Gaussian deviate via Box-Muller.  Always consumes exactly two generator
// outputs, keeping draw counts (and therefore downstream streams) fixed.
inline double normal(std::mt19937_64& gen, double mean, double sigma) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1]
  const double u2 = uniform01(gen);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return mean + sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
}

// Inverse-CDF draw from a categorical distribution using one uniform u.
// Rounding in the partial sums can only reach the final index, never skip it.
inline std::size_t sample_categorical(std::span<const double> probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.empty() ? 0 : probs.size() - 1;
}

}  // namespace ants
