#include <cmath>

#include "qaf/error.hpp"
#include "qaf/experiment.hpp"
#include "test_util.hpp"

using namespace qaf;
using namespace qaf::bench;

namespace {

ExperimentConfig small_config(SignalKind kind) {
  ExperimentConfig c = default_config(kind);
  c.trials = 6;
  c.steps = 400;
  c.final_window = 100;
  c.seed = 21;
  return c;
}

}  // namespace

TEST(ConfigTest, DefaultsPerSignal) {
  const auto ar = default_config(SignalKind::AR4);
  ASSERT_EQ(ar.algorithms.size(), 3u);
  EXPECT_EQ(ar.order, 4u);
  EXPECT_DOUBLE_EQ(ar.algorithms[0].mu, 0.08);
  EXPECT_EQ(default_config(SignalKind::SyntheticNoncircular).algorithms.size(), 5u);
  EXPECT_DOUBLE_EQ(default_step_size(SignalKind::Lorenz), 2e-4);
  EXPECT_EQ(parse_signal("MA4"), SignalKind::MA4);
  EXPECT_FALSE(parse_signal("sine").has_value());
}

TEST(ConfigTest, ValidationAndHash) {
  ExperimentConfig c = small_config(SignalKind::AR4);
  EXPECT_NO_THROW(c.validate());
  const auto h = config_hash(c);
  EXPECT_EQ(h, config_hash(c));
  EXPECT_NE(canonical_text(c).find("seed"), std::string::npos);
  c.seed = 22;
  EXPECT_NE(config_hash(c), h);
  c.threads = 7;
  c.seed = 21;
  EXPECT_EQ(config_hash(c), h);

  ExperimentConfig bad = c;
  bad.trials = 0;
  EXPECT_THROW(bad.validate(), Error);
  bad = c;
  bad.algorithms[0].mu = -1;
  EXPECT_THROW(bad.validate(), Error);
  bad = c;
  bad.signal.kind = SignalKind::ExternalCSV;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(MetricsTest, DecibelsAndConvergenceStep) {
  EXPECT_DOUBLE_EQ(to_db(1.0), 0.0);
  EXPECT_NEAR(to_db(0.1), -10.0, 1e-12);
  EXPECT_DOUBLE_EQ(to_db(0.0), -300.0);

  std::vector<double> curve(3000, 1.0);
  EXPECT_EQ(convergence_step(curve), 99u);
  for (std::size_t k = 0; k < 500; ++k) curve[k] = 10.0;
  EXPECT_EQ(convergence_step(curve), 598u);
}

TEST(MetricsTest, WeightEnergyZeroForSettledTrajectory) {
  const std::vector<QVector> flat(100, QVector{{1, 2, 3, 4}});
  for (double e : weight_convergence_energy(flat, 10)) EXPECT_EQ(e, 0.0);
  std::vector<QVector> moving = flat;
  for (std::size_t k = 0; k < 20; ++k) moving[k][0].j = 0.0;
  const auto e = weight_convergence_energy(moving, 10);
  EXPECT_EQ(e[0], 0.0);
  EXPECT_NEAR(e[2], 20 * 9.0, 1e-12);
}

TEST(ExperimentTest, IndependentOfThreadCount) {
  ExperimentConfig c = small_config(SignalKind::MA4);
  c.threads = 1;
  const auto a = run_experiment(c);
  c.threads = 3;
  const auto b = run_experiment(c);
  ASSERT_EQ(a.curves.size(), 3u);
  for (std::size_t n = 0; n < a.curves.size(); ++n) EXPECT_EQ(a.curves[n].mse, b.curves[n].mse);
  EXPECT_EQ(a.config_hash, b.config_hash);
  ASSERT_TRUE(a.ma_taps.has_value());
  EXPECT_EQ(a.curves[0].mse.size(), 400u);
}

TEST(ExperimentTest, TrialSignalsDeterministic) {
  const ExperimentConfig c = small_config(SignalKind::Lorenz);
  EXPECT_EQ(trial_signal(c, 2, std::nullopt), trial_signal(c, 2, std::nullopt));
  EXPECT_NE(trial_signal(c, 2, std::nullopt), trial_signal(c, 3, std::nullopt));
}

TEST(ExperimentTest, RecordsMeanWeights) {
  ExperimentConfig c = small_config(SignalKind::AR4);
  c.record_weights = true;
  const auto r = run_experiment(c);
  ASSERT_EQ(r.mean_weights.size(), 3u);
  EXPECT_EQ(r.mean_weights[0].size(), 400u);
  EXPECT_EQ(r.report.entries.size(), 3u);
}

TEST(ExperimentTest, WidelyLinearWinsOnNoncircularSignal) {
  ExperimentConfig c = default_config(SignalKind::SyntheticNoncircular);
  c.algorithms = {{Algorithm::IQLMS, 0.02}, {Algorithm::WLIQLMS, 0.02}};
  c.trials = 20;
  c.steps = 3000;
  c.seed = 23;
  const auto r = run_experiment(c);
  EXPECT_LT(r.report.entries[1].final_mse, r.report.entries[0].final_mse);
}

TEST(SystemIdTest, CovarianceAndConjugatePower) {
  SystemIdConfig c;
  c.plant = {{1, 0, 0, 0}, {0, 1, 0, 0}};
  EXPECT_EQ(system_id_covariance(c), QMatrix::identity(2));
  EXPECT_EQ(conjugate_power(c), 0.0);
  c.conjugate_part = QVector(6);
  c.conjugate_part[0] = Quaternion{0.5, 0, 0, 0};
  EXPECT_NEAR(conjugate_power(c), 0.25, 1e-12);
  c.mixing = Eigen::MatrixXd::Identity(2, 2) * 2.0;
  EXPECT_NEAR(system_id_covariance(c)(1, 1).r, 4.0, 1e-12);
}

TEST(SystemIdTest, StrictFilterWinsOnProperLinearPlant) {
  SystemIdConfig c;
  c.plant = {{0.5, 0.2, -0.1, 0.3}, {-0.4, 0.1, 0.6, 0.0}};
  c.trials = 30;
  c.seed = 24;
  const AlgorithmRun runs[] = {{Algorithm::IQLMS, 0.02}, {Algorithm::WLIQLMS, 0.02}};
  const auto out = run_system_identification(c, runs);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_LT(out[0].emse, out[1].emse);
  EXPECT_EQ(out[0].trial_mse.size(), 30u);
  EXPECT_NEAR(out[0].emse, 0.015 * 2 * 0.1 / 2, 0.0004);
}
