#include <cmath>

#include "qaf/error.hpp"
#include "qaf/stats.hpp"
#include "test_util.hpp"

using namespace qaf;
using namespace qaf::stats;
using qaf::testing::random_vector;

namespace {

std::vector<QVector> circular_vectors(std::size_t count, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<QVector> out(count, QVector(n));
  for (auto& x : out) {
    for (auto& q : x) q = rng.gaussian_quaternion(1.0);
  }
  return out;
}

QMatrix direct_augmented(std::span<const QVector> samples) {
  const std::size_t n = 4 * samples.front().size();
  QMatrix acc(n, n);
  for (const auto& x : samples) acc += vec_outer(augment(x), augment(x));
  return acc * (1.0 / static_cast<double>(samples.size()));
}

}  // namespace

TEST(AugmentedStatsTest, ConstantSamples) {
  const std::vector<QVector> s(5, QVector{kOne});
  const AugmentedStats a = estimate_stats(s);
  EXPECT_EQ(a.sample_count, 5u);
  EXPECT_QUAT_NEAR(a.R(0, 0), kOne, 1e-15);
  EXPECT_QUAT_NEAR(a.P(0, 0), kOne, 1e-15);
  EXPECT_QUAT_NEAR(a.S(0, 0), kOne, 1e-15);
  EXPECT_QUAT_NEAR(a.T(0, 0), kOne, 1e-15);
}

TEST(AugmentedStatsTest, Errors) {
  const std::vector<QVector> one{QVector{kOne}};
  try {
    (void)estimate_stats(one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyInput);
  }
  const std::vector<QVector> ragged{QVector{kOne}, QVector{kOne, kI}};
  try {
    (void)estimate_stats(ragged);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RaggedInput);
  }
}

TEST(AugmentedStatsTest, RealSamplesGiveClassicalCovariance) {
  Rng rng(30);
  std::vector<QVector> s(200, QVector(2));
  double c01 = 0.0;
  for (auto& x : s) {
    x[0] = {rng.gaussian(), 0, 0, 0};
    x[1] = {rng.gaussian(), 0, 0, 0};
    c01 += x[0].r * x[1].r;
  }
  const AugmentedStats a = estimate_stats(s);
  EXPECT_NEAR(a.R(0, 1).r, c01 / 200.0, 1e-14);
  EXPECT_EQ(norm(vector_part(a.R(0, 1))), 0.0);
}

TEST(AugmentedStatsTest, BlockLayoutMatchesDirectAugmentedMean) {
  Rng rng(31);
  std::vector<QVector> s;
  for (int n = 0; n < 50; ++n) s.push_back(random_vector(rng, 3));
  const QMatrix assembled = augmented_covariance(estimate_stats(s));
  EXPECT_LE(max_abs_diff(assembled, direct_augmented(s)), 1e-12);
  EXPECT_TRUE(is_hermitian(assembled, 1e-10));
}

TEST(AugmentedStatsTest, DeterministicScalarGivesRankOneWithTraceFourNorm) {
  const Quaternion q{1, 2, -1, 3};
  const std::vector<QVector> s(3, QVector{q});
  const QMatrix ra = augmented_covariance(estimate_stats(s));
  EXPECT_NEAR(trace(ra).r, 4 * norm2(q), 1e-12);
  const std::vector<double> lambda = hermitian_eigenvalues(ra);
  EXPECT_NEAR(lambda[0], 0.0, 1e-10);
  EXPECT_NEAR(lambda[2], 0.0, 1e-10);
  EXPECT_NEAR(lambda[3], 4 * norm2(q), 1e-10);
}

TEST(AugmentedStatsTest, ProperInputIsBlockDiagonal) {
  const auto s = circular_vectors(100000, 2, 32);
  const AugmentedStats a = estimate_stats(s);
  const double r = frobenius_norm(a.R);
  EXPECT_LT(frobenius_norm(a.P), 0.02 * r);
  EXPECT_LT(frobenius_norm(a.S), 0.02 * r);
  EXPECT_LT(frobenius_norm(a.T), 0.02 * r);
}

TEST(AugmentedStatsTest, PseudoCovariancesShrinkAtRootNRate) {
  double small = 0.0, large = 0.0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    small += frobenius_norm(estimate_stats(quadruply_white_noise(1000, 1.0, 100 + seed)).P);
    large += frobenius_norm(estimate_stats(quadruply_white_noise(100000, 1.0, 200 + seed)).P);
  }
  const double ratio = small / large;
  EXPECT_GT(ratio, 5.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(CircularityTest, CircularNoise) {
  const auto n = quadruply_white_noise(100000, 2.0, 33);
  const CircularityReport rep = circularity(n);
  EXPECT_LT(rep.r_s, 0.05);
  for (double p : rep.component_powers) EXPECT_NEAR(p, 0.5, 0.025);
}

TEST(CircularityTest, RealSignalIsMaximallyNoncircular) {
  Rng rng(34);
  std::vector<Quaternion> s(1000);
  for (auto& q : s) q = {rng.gaussian(), 0, 0, 0};
  EXPECT_NEAR(circularity(s).r_s, 1.0, 1e-12);
}

TEST(CircularityTest, ScaleInvariant) {
  const auto s = noncircular_generator(5000, 0.4, 35).samples;
  std::vector<Quaternion> scaled(s);
  for (auto& q : scaled) q *= 7.5;
  EXPECT_NEAR(circularity(s).r_s, circularity(scaled).r_s, 1e-10);
}

TEST(CircularityTest, ZeroPower) {
  const std::vector<Quaternion> zeros(10);
  try {
    (void)circularity(zeros);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroPowerSignal);
  }
}

TEST(NoiseTest, QuadruplyWhiteMoments) {
  const double var = 0.4;
  const auto n = quadruply_white_noise(100000, var, 36);
  Quaternion mean;
  double power = 0.0;
  for (const auto& q : n) {
    mean += q;
    power += norm2(q);
  }
  mean *= 1.0 / n.size();
  power /= n.size();
  const double tol = 4 * std::sqrt(var) / std::sqrt(static_cast<double>(n.size()));
  EXPECT_LT(std::abs(mean.r), tol);
  EXPECT_LT(std::abs(mean.k), tol);
  EXPECT_NEAR(power, var, 0.05 * var);
}

TEST(NoiseTest, SameSeedSameStream) {
  EXPECT_EQ(quadruply_white_noise(100, 1.0, 37), quadruply_white_noise(100, 1.0, 37));
  EXPECT_NE(quadruply_white_noise(100, 1.0, 37), quadruply_white_noise(100, 1.0, 38));
}

TEST(CircularityIdentityTest, HoldsForCircularData) {
  const auto n = quadruply_white_noise(100000, 1.0, 39);
  EXPECT_LT(circularity_identity_check(n), 0.05);
  const auto s = circular_vectors(100000, 2, 40);
  EXPECT_LT(circularity_identity_check(s), 0.05);
}

TEST(CircularityIdentityTest, ViolatedForRealData) {
  Rng rng(41);
  std::vector<Quaternion> s(1000);
  for (auto& q : s) q = {rng.gaussian(), 0, 0, 0};
  // For real data C = R, so |C + R/2| / |R| = 3/2.
  EXPECT_NEAR(circularity_identity_check(s), 1.5, 1e-12);
}

TEST(CircularityIdentityTest, ShrinksWithSampleSize) {
  double small = 0.0, large = 0.0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    small += circularity_identity_check(quadruply_white_noise(100, 1.0, 300 + seed));
    large += circularity_identity_check(quadruply_white_noise(100000, 1.0, 400 + seed));
  }
  EXPECT_GT(small / large, 10.0);
}

TEST(NoncircularGeneratorTest, HitsTargets) {
  for (double target : {0.0, 0.49, 0.9}) {
    const NoncircularStream s = noncircular_generator(100000, target, 42);
    EXPECT_NEAR(s.population_r_s, target, 1e-6);
    EXPECT_NEAR(s.achieved_r_s, target, 0.05) << "target " << target;
  }
  EXPECT_LT(noncircular_generator(100000, 0.0, 43).achieved_r_s, 0.05);
}

TEST(NoncircularGeneratorTest, RejectsOutOfRangeTarget) {
  EXPECT_THROW((void)noncircular_generator(10, 1.0, 1), Error);
  EXPECT_THROW((void)noncircular_generator(10, -0.1, 1), Error);
}

TEST(CrossCorrelationTest, RecoversScalarGain) {
  // d = q0 x with white x: E[d x*] = q0 E[x x*] = q0.
  const Quaternion q0{0.5, -1, 2, 0.25};
  const auto x = quadruply_white_noise(50000, 1.0, 44);
  std::vector<QVector> xs;
  std::vector<Quaternion> d;
  for (const auto& q : x) {
    xs.push_back({q});
    d.push_back(q0 * q);
  }
  EXPECT_QUAT_NEAR(cross_correlation(xs, d)[0], q0, 0.05);
}
