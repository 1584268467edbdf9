#pragma once

#include <cstdint>
#include <random>

#include "qaf/quaternion.hpp"

namespace qaf {

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Independent stream seed for the index-th trial of a base seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

// Owned-state Gaussian generator. Same seed gives the same stream within one build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next() { return engine_(); }

  // Four i.i.d. N(0, variance/4) components, so E[q q*] = variance.
  Quaternion gaussian_quaternion(double variance);

  // Uniform on the unit 3-sphere.
  Quaternion unit_quaternion();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qaf
