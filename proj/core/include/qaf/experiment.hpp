#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qaf/filters.hpp"
#include "qaf/signals.hpp"

namespace qaf::bench {

using filters::Algorithm;

enum class SignalKind { AR4, MA4, Lorenz, SyntheticNoncircular, ExternalCSV };

[[nodiscard]] std::string_view to_string(SignalKind kind) noexcept;
[[nodiscard]] std::optional<SignalKind> parse_signal(std::string_view name);
[[nodiscard]] double default_step_size(SignalKind kind) noexcept;

struct SignalSpec {
  SignalKind kind = SignalKind::AR4;
  double lorenz_dt = 0.01;
  double target_r_s = 0.49;
  double ma_input_variance = kMaInputVariance;
  std::string csv_path;
  bool pure = false;
};

struct AlgorithmRun {
  Algorithm algorithm = Algorithm::IQLMS;
  double mu = 0.0;
};

struct ExperimentConfig {
  SignalSpec signal;
  std::vector<AlgorithmRun> algorithms;
  std::size_t order = 4;
  std::size_t horizon = 1;  // predict y(k) from y(k - horizon) and earlier
  std::size_t trials = 100;
  std::size_t steps = 10000;
  std::uint64_t seed = 1;
  std::size_t final_window = 1000;
  bool record_weights = false;
  unsigned threads = 0;  // 0 picks the hardware concurrency
  std::string out_dir = ".";

  // Throws InvalidArgument unless trials >= 1, horizon >= 1, steps >= order, every mu > 0.
  void validate() const;
};

// Defaults for a benchmark signal: the three strict algorithms at the signal's step size, N = 4.
[[nodiscard]] ExperimentConfig default_config(SignalKind kind);

// Canonical "key = value" text of everything that affects results.
[[nodiscard]] std::string canonical_text(const ExperimentConfig& config);
// FNV-1a of canonical_text.
[[nodiscard]] std::uint64_t config_hash(const ExperimentConfig& config);

struct LearningCurve {
  Algorithm algorithm = Algorithm::IQLMS;
  double mu = 0.0;
  std::vector<double> mse;
  std::uint64_t config_hash = 0;
};

// 10 log10(mse), with log(0) clamped to -300.
[[nodiscard]] double to_db(double mse) noexcept;

struct SteadyStateEntry {
  Algorithm algorithm = Algorithm::IQLMS;
  double final_mse = 0.0;
  std::size_t convergence_step = 0;
};

struct SteadyStateReport {
  std::vector<SteadyStateEntry> entries;
  std::size_t window = 0;
};

// First k where the mean of curve[k - smoothing + 1 .. k] is within factor x the mean of the last `window`
// samples. The earliest possible answer is smoothing - 1.
[[nodiscard]] std::size_t convergence_step(std::span<const double> curve, std::size_t window = 1000,
                                           std::size_t smoothing = 100, double factor = 1.1);
[[nodiscard]] SteadyStateReport steady_state_report(std::span<const LearningCurve> curves, std::size_t window = 1000);

struct ExperimentResult {
  std::vector<LearningCurve> curves;
  SteadyStateReport report;
  // Trial-averaged weights after every step, per algorithm, when recorded.
  std::vector<std::vector<QVector>> mean_weights;
  std::optional<MaTaps> ma_taps;
  std::uint64_t config_hash = 0;
};

// Sum over the first half of the run of the squared distance between each component of the trial-averaged
// weights and its final level (mean of the last `window` steps). Smaller means the component settles sooner.
[[nodiscard]] std::array<double, 4> weight_convergence_energy(std::span<const QVector> mean_weights,
                                                              std::size_t window = 1000);

// Trial t uses derive_seed(seed, t); all algorithms see the same realisation. Trials run on worker threads
// over a fixed partition and are reduced in partition order, so results do not depend on thread count.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config);

// The stream used for one trial.
[[nodiscard]] std::vector<Quaternion> trial_signal(const ExperimentConfig& config, std::size_t trial,
                                                   const std::optional<MaTaps>& taps);

// Identification of a known plant d = u^T x + v^T x^i + g^T x^j + h^T x^k + n from regressors
// x = L z with z circular white of unit power per tap and L a real N x N mixing.
struct SystemIdConfig {
  QVector plant;           // u, length N
  QVector conjugate_part;  // [v, g, h] of length 3N, or empty for a strictly linear plant
  Eigen::MatrixXd mixing;  // N x N real; identity when empty
  double noise_variance = 0.1;
  std::size_t steps = 4000;
  std::size_t window = 2000;  // steady-state window at the end of each run
  std::size_t trials = 100;
  std::uint64_t seed = 1;

  [[nodiscard]] std::size_t order() const noexcept { return plant.size(); }
};

struct SystemIdOutcome {
  Algorithm algorithm = Algorithm::IQLMS;
  double mu = 0.0;
  double mse = 0.0;   // mean |e|^2 over the window and trials
  double emse = 0.0;  // mean |e - n|^2 over the window and trials
  std::vector<double> trial_mse;
};

// Covariance E[x x^H] = L L^T of the regressors.
[[nodiscard]] QMatrix system_id_covariance(const SystemIdConfig& config);
// E|v^T x^i + g^T x^j + h^T x^k|^2 for circular x.
[[nodiscard]] double conjugate_power(const SystemIdConfig& config);

[[nodiscard]] std::vector<SystemIdOutcome> run_system_identification(const SystemIdConfig& config,
                                                                     std::span<const AlgorithmRun> algorithms);

}  // namespace qaf::bench
