#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded draws built directly on mt19937_64 output so that identical seeds
// give identical streams on every platform (distribution classes from the
// standard library are implementation-defined).
namespace spinmap::rng {

// splitmix64 step; used to derive independent streams from a master seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 engine(std::uint64_t master, std::uint64_t stream) {
  return std::mt19937_64(mix_seed(master, stream));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform in {0, .., n-1}, unbiased via rejection.
inline int uniform_int(std::mt19937_64& g, int n) {
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

// Box-Muller, one value per call.
inline double normal(std::mt19937_64& g, double mean, double sigma) {
  const double u1 = 1.0 - uniform01(g);  // (0, 1]
  const double u2 = uniform01(g);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + sigma * r * std::cos(2.0 * M_PI * u2);
}

}  // namespace spinmap::rng
