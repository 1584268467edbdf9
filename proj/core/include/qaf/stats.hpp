#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qaf/qlinalg.hpp"
#include "qaf/random.hpp"

namespace qaf::stats {

// Sample estimates of E[x x^H], E[x x^{iH}], E[x x^{jH}], E[x x^{kH}] with 1/K normalisation.
struct AugmentedStats {
  QMatrix R, P, S, T;
  std::size_t sample_count = 0;

  [[nodiscard]] std::size_t dim() const noexcept { return R.rows(); }
};

struct CircularityReport {
  double r_s = 0.0;
  std::array<double, 4> component_powers{};  // r, i, j, k
  double p_norm = 0.0;
  double s_norm = 0.0;
  double t_norm = 0.0;
};

// Throws EmptyInput for fewer than two samples and RaggedInput for unequal lengths.
[[nodiscard]] AugmentedStats estimate_stats(std::span<const QVector> samples);
// Scalar stream treated as length-1 vectors.
[[nodiscard]] AugmentedStats estimate_stats(std::span<const Quaternion> stream);

// 4N x 4N covariance of x^a = [x, x^i, x^j, x^k]:
//   [ R    P    S    T   ]
//   [ P^i  R^i  T^i  S^i ]
//   [ S^j  T^j  R^j  P^j ]
//   [ T^k  S^k  P^k  R^k ]
[[nodiscard]] QMatrix augmented_covariance(const AugmentedStats& a);

// [x, x^i, x^j, x^k]
[[nodiscard]] QVector augment(std::span<const Quaternion> x);

// Entries E[d conj(x_n)].
[[nodiscard]] QVector cross_correlation(std::span<const QVector> x, std::span<const Quaternion> d);

// r_s = sum_n (|P_nn| + |S_nn| + |T_nn|) / (3 sum_n R_nn), clamped to [0, 1].
// Throws ZeroPowerSignal when the total power vanishes.
[[nodiscard]] CircularityReport circularity(const AugmentedStats& a);
[[nodiscard]] CircularityReport circularity(std::span<const Quaternion> stream);

[[nodiscard]] std::vector<Quaternion> quadruply_white_noise(std::size_t n, double variance, Rng& rng);
[[nodiscard]] std::vector<Quaternion> quadruply_white_noise(std::size_t n, double variance, std::uint64_t seed);

// |C + R/2|_F / |R|_F with C = mean x x^T. Near zero for circular sources.
[[nodiscard]] double circularity_identity_check(std::span<const QVector> samples);
[[nodiscard]] double circularity_identity_check(std::span<const Quaternion> stream);

struct NoncircularStream {
  std::vector<Quaternion> samples;
  double target_r_s = 0.0;
  double population_r_s = 0.0;
  double achieved_r_s = 0.0;
  double imbalance = 0.0;
};

// Population r_s of the generator for a given power imbalance in [0, 1].
[[nodiscard]] double noncircular_population_rs(double imbalance);

// Four-component Gaussian AR(1) stream whose power imbalance is bisected until the population r_s
// hits the target, scaled to unit total power. Throws CalibrationFailed after 50 iterations without convergence.
[[nodiscard]] NoncircularStream noncircular_generator(std::size_t n, double target_r_s, std::uint64_t seed);

}  // namespace qaf::stats
