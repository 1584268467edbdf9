#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Cholesky>

#include "qaf/analysis.hpp"
#include "qaf/error.hpp"
#include "qaf/experiment.hpp"
#include "qaf/io.hpp"
#include "qaf/signals.hpp"
#include "qaf/stats.hpp"

namespace fs = std::filesystem;
using namespace qaf;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> signal;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> steps;
  std::optional<double> mu;
  std::vector<std::string> algos;
  std::optional<std::size_t> order;
  std::optional<std::size_t> horizon;
  std::optional<std::string> out_dir;
  std::optional<std::string> csv;
  bool pure = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Config file with key = value lines")->check(CLI::ExistingFile);
  cmd->add_option("--signal", f.signal, "ar4 | ma4 | lorenz | noncircular | csv");
  cmd->add_option("--seed", f.seed, "Base seed");
  cmd->add_option("--trials", f.trials, "Independent trials");
  cmd->add_option("--steps", f.steps, "Samples per trial");
  cmd->add_option("--mu", f.mu, "Step size for every algorithm without an explicit one");
  cmd->add_option("--algo", f.algos, "Algorithm, optionally NAME:MU (repeatable)");
  cmd->add_option("--order", f.order, "Filter order N");
  cmd->add_option("--horizon", f.horizon, "Prediction horizon in samples");
  cmd->add_option("--out-dir", f.out_dir, "Output directory");
  cmd->add_option("--csv", f.csv, "External CSV stream (implies --signal csv)");
  cmd->add_flag("--pure", f.pure, "External CSV holds three channels mapped to i, j, k");
}

bench::ExperimentConfig build_config(const CommonFlags& f) {
  bench::ExperimentConfig cfg = bench::default_config(bench::SignalKind::AR4);
  if (!f.config_path.empty()) cfg = bench::load_config(f.config_path);

  std::string overrides;
  if (f.csv && !f.signal) overrides += "signal = csv\n";
  if (f.signal) overrides += "signal = " + *f.signal + "\n";
  for (const auto& a : f.algos) overrides += "algo = " + a + "\n";
  if (f.mu) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "mu = %.17g\n", *f.mu);
    overrides += buf;
  }
  std::istringstream in(overrides);
  bench::apply_config_text(in, cfg, "<command line>");

  if (f.seed) cfg.seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  if (f.steps) cfg.steps = *f.steps;
  if (f.order) cfg.order = *f.order;
  if (f.horizon) cfg.horizon = *f.horizon;
  if (f.out_dir) cfg.out_dir = *f.out_dir;
  if (f.csv) cfg.signal.csv_path = *f.csv;
  if (f.pure) cfg.signal.pure = true;
  cfg.validate();
  return cfg;
}

void write_metadata(const fs::path& path, const bench::ExperimentConfig& cfg, const bench::ExperimentResult& res) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  char buf[160];
  std::snprintf(buf, sizeof buf, "config_hash = %016llx\n", static_cast<unsigned long long>(res.config_hash));
  out << buf << bench::canonical_text(cfg);
  if (res.ma_taps) {
    for (std::size_t n = 0; n < res.ma_taps->size(); ++n) {
      const Quaternion& q = (*res.ma_taps)[n];
      std::snprintf(buf, sizeof buf, "ma_tap%zu = %.17g,%.17g,%.17g,%.17g\n", n, q.r, q.i, q.j, q.k);
      out << buf;
    }
  }
}

int cmd_run(const CommonFlags& f, bool no_plot) {
  const bench::ExperimentConfig cfg = build_config(f);
  const bench::ExperimentResult res = bench::run_experiment(cfg);
  const fs::path dir = cfg.out_dir;
  bench::emit_outputs(res.curves, res.report, bench::default_output_paths(dir, !no_plot));
  write_metadata(dir / "metadata.txt", cfg, res);

  std::printf("signal %s, N = %zu, %zu trials x %zu steps, seed %llu\n",
              std::string(bench::to_string(cfg.signal.kind)).c_str(), cfg.order, cfg.trials, cfg.steps,
              static_cast<unsigned long long>(cfg.seed));
  std::printf("%-10s %10s %14s %14s %12s\n", "algorithm", "mu", "final MSE", "final dB", "conv. step");
  for (std::size_t a = 0; a < res.report.entries.size(); ++a) {
    const auto& e = res.report.entries[a];
    std::printf("%-10s %10.3g %14.6g %14.3f %12zu\n", std::string(filters::to_string(e.algorithm)).c_str(),
                res.curves[a].mu, e.final_mse, bench::to_db(e.final_mse), e.convergence_step);
  }
  std::printf("outputs written to %s\n", dir.string().c_str());
  return 0;
}

int cmd_analyze(const CommonFlags& f, double input_correlation, double noise_variance) {
  const std::size_t order = f.order.value_or(2);
  bench::SystemIdConfig sys;
  sys.trials = f.trials.value_or(100);
  sys.steps = f.steps.value_or(4000);
  sys.window = sys.steps / 2;
  sys.seed = f.seed.value_or(1);
  sys.noise_variance = noise_variance;
  Rng rng(derive_seed(sys.seed, 0xA11CE));
  sys.plant.resize(order);
  for (auto& w : sys.plant) w = rng.gaussian_quaternion(1.0);
  Eigen::MatrixXd cov(static_cast<Eigen::Index>(order), static_cast<Eigen::Index>(order));
  for (Eigen::Index r = 0; r < cov.rows(); ++r) {
    for (Eigen::Index c = 0; c < cov.cols(); ++c) cov(r, c) = std::pow(input_correlation, std::abs(r - c));
  }
  sys.mixing = cov.llt().matrixL();
  const QMatrix R = bench::system_id_covariance(sys);

  std::printf("input covariance: %zu taps, correlation %.3g, trace %.6g\n", order, input_correlation, trace(R).r);
  std::printf("%-10s %14s %14s %12s\n", "algorithm", "mu_max (eig)", "mu_max (trace)", "spread");
  for (auto algo : {filters::Algorithm::IQLMS, filters::Algorithm::QLMS, filters::Algorithm::HRQLMS}) {
    const auto b = analysis::step_size_bound(algo, R);
    std::printf("%-10s %14.6g %14.6g %12.6g\n", std::string(filters::to_string(algo)).c_str(), b.lambda_bound,
                b.trace_bound, analysis::eigenvalue_spread(algo, R));
  }

  const double mu = f.mu.value_or(0.01);
  const std::vector<bench::AlgorithmRun> runs{{filters::Algorithm::IQLMS, mu}, {filters::Algorithm::WLIQLMS, mu}};
  const auto outcomes = bench::run_system_identification(sys, runs);
  const QMatrix Ra = stats::augmented_covariance(stats::AugmentedStats{R, QMatrix(order, order), QMatrix(order, order),
                                                                       QMatrix(order, order), 0});
  std::vector<analysis::PredictionRow> rows;
  rows.push_back({analysis::predict_emse(filters::Algorithm::IQLMS, mu, R, noise_variance), outcomes[0].emse});
  rows.push_back({analysis::predict_emse(filters::Algorithm::WLIQLMS, mu, Ra, noise_variance), outcomes[1].emse});
  std::printf("%-10s %10s %14s %14s %14s\n", "algorithm", "mu", "EMSE small", "EMSE large", "measured");
  for (const auto& row : rows) {
    std::printf("%-10s %10.3g %14.6g %14.6g %14.6g\n",
                std::string(filters::to_string(row.prediction.algorithm)).c_str(), row.prediction.mu,
                row.prediction.emse_small, row.prediction.emse_large, row.measured_emse);
  }
  const fs::path dir = f.out_dir.value_or(".");
  fs::create_directories(dir);
  std::ofstream out(dir / "predictions.csv");
  if (!out) throw Error(ErrorKind::IoError, "cannot write predictions.csv");
  analysis::write_predictions(out, rows);
  std::printf("predictions written to %s\n", (dir / "predictions.csv").string().c_str());
  return 0;
}

int cmd_gen(const CommonFlags& f, const std::string& output) {
  bench::ExperimentConfig cfg = build_config(f);
  const std::optional<bench::MaTaps> taps =
      cfg.signal.kind == bench::SignalKind::MA4 ? std::optional(bench::random_ma_taps(cfg.seed)) : std::nullopt;
  const std::vector<Quaternion> stream = bench::trial_signal(cfg, 0, taps);
  if (output.empty() || output == "-") {
    bench::write_stream_csv(std::cout, stream);
  } else {
    std::ofstream out(output);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + output);
    bench::write_stream_csv(out, stream);
  }
  if (stream.size() >= 2) {
    const auto rep = stats::circularity(stream);
    std::fprintf(stderr, "%zu samples, r_s = %.4f\n", stream.size(), rep.r_s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion adaptive filtering benchmarks"};
  app.require_subcommand(1);

  CommonFlags run_flags, analyze_flags, gen_flags;
  bool no_plot = false;
  auto* run = app.add_subcommand("run", "Multi-trial prediction experiment with learning curves");
  add_common(run, run_flags);
  run->add_flag("--no-plot", no_plot, "Skip the SVG plot");

  double correlation = 0.5;
  double noise = 0.1;
  auto* analyze = app.add_subcommand("analyze", "Step-size bounds, eigenvalue spreads and EMSE predictions");
  add_common(analyze, analyze_flags);
  analyze->add_option("--correlation", correlation, "Lag correlation of the regressor taps")
      ->check(CLI::Range(0.0, 0.95));
  analyze->add_option("--noise", noise, "Measurement noise variance")->check(CLI::PositiveNumber);

  std::string output;
  auto* gen = app.add_subcommand("gen", "Write one realisation of a benchmark signal as CSV");
  add_common(gen, gen_flags);
  gen->add_option("-o,--output", output, "Output file, '-' for stdout");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_flags, no_plot);
    if (*analyze) return cmd_analyze(analyze_flags, correlation, noise);
    if (*gen) return cmd_gen(gen_flags, output);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
