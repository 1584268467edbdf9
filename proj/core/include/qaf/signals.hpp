#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qaf/quaternion.hpp"

namespace qaf::bench {

inline constexpr std::array<double, 4> kAr4Coefficients{1.79, -1.85, 1.27, -0.41};
inline constexpr double kDrivingNoiseVariance = 0.1;
inline constexpr std::size_t kAr4Warmup = 1000;

// y(k) = 1.79 y(k-1) - 1.85 y(k-2) + 1.27 y(k-3) - 0.41 y(k-4) + n(k), zero initial state,
// quadruply white driving noise, first `warmup` samples dropped.
[[nodiscard]] std::vector<Quaternion> gen_ar4(std::size_t n, std::uint64_t seed,
                                              double noise_variance = kDrivingNoiseVariance,
                                              std::size_t warmup = kAr4Warmup);

using MaTaps = std::array<Quaternion, 5>;

// Unit-norm taps drawn from the seed.
[[nodiscard]] MaTaps random_ma_taps(std::uint64_t seed);

inline constexpr double kMaInputVariance = 0.1;

// y(k) = a x(k) + b x(k-1) + c x(k-2) + d x(k-3) + e x(k-4) + n(k) with circular white x, stationary from k = 0.
[[nodiscard]] std::vector<Quaternion> gen_ma4(std::size_t n, std::uint64_t seed, const MaTaps& taps,
                                              double input_variance = kMaInputVariance,
                                              double noise_variance = kDrivingNoiseVariance);

struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  std::size_t burn_in = 2000;
};

// RK4 trajectory from (1, 1, 1) plus a small seeded jitter, mapped (x, y, z) -> (i, j, k).
// Throws InvalidArgument unless 0 < dt <= 0.05.
[[nodiscard]] std::vector<Quaternion> lorenz_trajectory(std::size_t n, double dt, std::uint64_t seed,
                                                        const LorenzParams& params = {});

// Trajectory with every component shifted to zero mean and scaled to unit power.
[[nodiscard]] std::vector<Quaternion> gen_lorenz(std::size_t n, double dt, std::uint64_t seed,
                                                 const LorenzParams& params = {});

}  // namespace qaf::bench
