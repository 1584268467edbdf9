#include "qaf/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "qaf/error.hpp"
#include "qaf/io.hpp"
#include "qaf/random.hpp"
#include "qaf/stats.hpp"

namespace qaf::bench {
namespace {

constexpr std::size_t kPartitions = 8;

std::string normalise(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Per-partition sums.
struct Partial {
  std::vector<std::vector<double>> mse;
  std::vector<std::vector<QVector>> weights;
};

std::vector<Quaternion> make_signal(const ExperimentConfig& config, std::size_t trial,
                                    const std::optional<MaTaps>& taps, const std::vector<Quaternion>* external) {
  const std::uint64_t seed = derive_seed(config.seed, trial);
  switch (config.signal.kind) {
    case SignalKind::AR4: return gen_ar4(config.steps, seed);
    case SignalKind::MA4: return gen_ma4(config.steps, seed, taps.value(), config.signal.ma_input_variance);
    case SignalKind::Lorenz: return gen_lorenz(config.steps, config.signal.lorenz_dt, seed);
    case SignalKind::SyntheticNoncircular:
      return stats::noncircular_generator(config.steps, config.signal.target_r_s, seed).samples;
    case SignalKind::ExternalCSV: {
      std::vector<Quaternion> loaded;
      if (external == nullptr) {
        loaded = ingest_csv(config.signal.csv_path, config.signal.pure).samples;
        external = &loaded;
      }
      if (external->size() < config.steps) {
        throw Error(ErrorKind::InvalidArgument, "external stream has " + std::to_string(external->size()) +
                                                    " samples, fewer than the requested steps");
      }
      return {external->begin(), external->begin() + static_cast<std::ptrdiff_t>(config.steps)};
    }
  }
  return {};
}

void run_partition(const ExperimentConfig& config, std::size_t first, std::size_t last,
                   const std::optional<MaTaps>& taps, const std::vector<Quaternion>* external, Partial& out) {
  const std::size_t algos = config.algorithms.size();
  out.mse.assign(algos, std::vector<double>(config.steps, 0.0));
  if (config.record_weights) out.weights.assign(algos, {});
  filters::RunOptions options;
  options.record_weights = config.record_weights;
  options.horizon = config.horizon;
  for (std::size_t t = first; t < last; ++t) {
    const std::vector<Quaternion> stream = make_signal(config, t, taps, external);
    for (std::size_t a = 0; a < algos; ++a) {
      filters::FilterConfig fc;
      fc.algorithm = config.algorithms[a].algorithm;
      fc.order = config.order;
      fc.step_size = config.algorithms[a].mu;
      const filters::RunResult run = filters::run_filter(fc, stream, options);
      for (std::size_t k = 0; k < config.steps; ++k) out.mse[a][k] += run.squared_error[k];
      if (config.record_weights) {
        auto& acc = out.weights[a];
        if (acc.empty()) {
          acc = run.weight_trajectory;
        } else {
          for (std::size_t k = 0; k < config.steps; ++k) {
            for (std::size_t n = 0; n < acc[k].size(); ++n) acc[k][n] += run.weight_trajectory[k][n];
          }
        }
      }
    }
  }
}

}  // namespace

std::string_view to_string(SignalKind kind) noexcept {
  switch (kind) {
    case SignalKind::AR4: return "ar4";
    case SignalKind::MA4: return "ma4";
    case SignalKind::Lorenz: return "lorenz";
    case SignalKind::SyntheticNoncircular: return "noncircular";
    case SignalKind::ExternalCSV: return "csv";
  }
  return "?";
}

std::optional<SignalKind> parse_signal(std::string_view name) {
  const std::string key = normalise(name);
  if (key == "ar4" || key == "ar") return SignalKind::AR4;
  if (key == "ma4" || key == "ma") return SignalKind::MA4;
  if (key == "lorenz") return SignalKind::Lorenz;
  if (key == "noncircular" || key == "synthetic" || key == "syntheticnoncircular") {
    return SignalKind::SyntheticNoncircular;
  }
  if (key == "csv" || key == "external" || key == "externalcsv") return SignalKind::ExternalCSV;
  return std::nullopt;
}

double default_step_size(SignalKind kind) noexcept {
  switch (kind) {
    case SignalKind::AR4: return 0.08;
    case SignalKind::MA4: return 0.04;
    case SignalKind::Lorenz: return 2e-4;
    case SignalKind::SyntheticNoncircular: return 2e-2;
    case SignalKind::ExternalCSV: return 2e-2;
  }
  return 0.01;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  if (steps < order) throw Error(ErrorKind::InvalidArgument, "steps must be at least the filter order");
  for (const auto& run : algorithms) {
    if (!(run.mu > 0.0) || !std::isfinite(run.mu)) {
      throw Error(ErrorKind::InvalidArgument, "step size for " + std::string(filters::to_string(run.algorithm)) +
                                                  " must be positive");
    }
  }
  if (signal.kind == SignalKind::ExternalCSV && signal.csv_path.empty()) {
    throw Error(ErrorKind::InvalidArgument, "external signal needs a csv path");
  }
}

ExperimentConfig default_config(SignalKind kind) {
  ExperimentConfig c;
  c.signal.kind = kind;
  const double mu = default_step_size(kind);
  c.algorithms = {{Algorithm::QLMS, mu}, {Algorithm::HRQLMS, mu}, {Algorithm::IQLMS, mu}};
  if (kind == SignalKind::SyntheticNoncircular || kind == SignalKind::ExternalCSV) {
    c.algorithms.push_back({Algorithm::WLQLMS, mu});
    c.algorithms.push_back({Algorithm::WLIQLMS, mu});
  }
  return c;
}

std::string canonical_text(const ExperimentConfig& config) {
  std::string out;
  char buf[128];
  auto line = [&out](const std::string& key, const std::string& value) { out += key + " = " + value + "\n"; };
  line("signal", std::string(to_string(config.signal.kind)));
  std::snprintf(buf, sizeof buf, "%.17g", config.signal.lorenz_dt);
  line("lorenz_dt", buf);
  std::snprintf(buf, sizeof buf, "%.17g", config.signal.target_r_s);
  line("target_rs", buf);
  std::snprintf(buf, sizeof buf, "%.17g", config.signal.ma_input_variance);
  line("ma_input_variance", buf);
  if (config.signal.kind == SignalKind::ExternalCSV) {
    line("csv", config.signal.csv_path);
    line("pure", config.signal.pure ? "true" : "false");
  }
  line("order", std::to_string(config.order));
  line("horizon", std::to_string(config.horizon));
  line("trials", std::to_string(config.trials));
  line("steps", std::to_string(config.steps));
  line("seed", std::to_string(config.seed));
  line("final_window", std::to_string(config.final_window));
  for (const auto& run : config.algorithms) {
    std::snprintf(buf, sizeof buf, "%s:%.17g", std::string(filters::to_string(run.algorithm)).c_str(), run.mu);
    line("algo", buf);
  }
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double to_db(double mse) noexcept {
  if (!(mse > 0.0)) return -300.0;
  return std::max(-300.0, 10.0 * std::log10(mse));
}

std::size_t convergence_step(std::span<const double> curve, std::size_t window, std::size_t smoothing,
                             double factor) {
  if (curve.empty()) return 0;
  window = std::clamp<std::size_t>(window, 1, curve.size());
  smoothing = std::max<std::size_t>(smoothing, 1);
  double final_mean = 0.0;
  for (std::size_t k = curve.size() - window; k < curve.size(); ++k) final_mean += curve[k];
  final_mean /= static_cast<double>(window);
  const double level = factor * final_mean;
  const std::size_t span = std::min(smoothing, curve.size());
  double running = 0.0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    running += curve[k];
    if (k >= span) running -= curve[k - span];
    if (k + 1 >= span && running / static_cast<double>(span) <= level) return k;
  }
  return curve.size() - 1;
}

SteadyStateReport steady_state_report(std::span<const LearningCurve> curves, std::size_t window) {
  SteadyStateReport report;
  report.window = window;
  for (const LearningCurve& c : curves) {
    SteadyStateEntry e;
    e.algorithm = c.algorithm;
    const std::size_t w = std::clamp<std::size_t>(window, 1, std::max<std::size_t>(c.mse.size(), 1));
    double acc = 0.0;
    for (std::size_t k = c.mse.size() - std::min(w, c.mse.size()); k < c.mse.size(); ++k) acc += c.mse[k];
    e.final_mse = c.mse.empty() ? 0.0 : acc / static_cast<double>(std::min(w, c.mse.size()));
    e.convergence_step = convergence_step(c.mse, window);
    report.entries.push_back(e);
  }
  return report;
}

std::array<double, 4> weight_convergence_energy(std::span<const QVector> mean_weights, std::size_t window) {
  std::array<double, 4> energy{};
  if (mean_weights.empty()) return energy;
  const std::size_t steps = mean_weights.size();
  const std::size_t taps = mean_weights.front().size();
  window = std::clamp<std::size_t>(window, 1, steps);
  QVector final_level(taps);
  for (std::size_t k = steps - window; k < steps; ++k) {
    for (std::size_t n = 0; n < taps; ++n) final_level[n] += mean_weights[k][n];
  }
  for (auto& q : final_level) q *= 1.0 / static_cast<double>(window);
  for (std::size_t k = 0; k < steps / 2; ++k) {
    for (std::size_t n = 0; n < taps; ++n) {
      const Quaternion d = mean_weights[k][n] - final_level[n];
      energy[0] += d.r * d.r;
      energy[1] += d.i * d.i;
      energy[2] += d.j * d.j;
      energy[3] += d.k * d.k;
    }
  }
  return energy;
}

std::vector<Quaternion> trial_signal(const ExperimentConfig& config, std::size_t trial,
                                     const std::optional<MaTaps>& taps) {
  return make_signal(config, trial, taps, nullptr);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config_hash = config_hash(config);
  if (config.signal.kind == SignalKind::MA4) result.ma_taps = random_ma_taps(config.seed);

  std::vector<Quaternion> external;
  if (config.signal.kind == SignalKind::ExternalCSV) {
    external = ingest_csv(config.signal.csv_path, config.signal.pure).samples;
  }
  const std::vector<Quaternion>* external_ptr =
      config.signal.kind == SignalKind::ExternalCSV ? &external : nullptr;

  const std::size_t parts = std::min(kPartitions, config.trials);
  std::vector<Partial> partials(parts);
  std::vector<std::exception_ptr> failures(parts);
  auto work = [&](std::size_t p) {
    const std::size_t first = config.trials * p / parts;
    const std::size_t last = config.trials * (p + 1) / parts;
    try {
      run_partition(config, first, last, result.ma_taps, external_ptr, partials[p]);
    } catch (...) {
      failures[p] = std::current_exception();
    }
  };

  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, parts));
  if (threads <= 1) {
    for (std::size_t p = 0; p < parts; ++p) work(p);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t p = t; p < parts; p += threads) work(p);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  const double inv = 1.0 / static_cast<double>(config.trials);
  const std::size_t algos = config.algorithms.size();
  for (std::size_t a = 0; a < algos; ++a) {
    LearningCurve curve;
    curve.algorithm = config.algorithms[a].algorithm;
    curve.mu = config.algorithms[a].mu;
    curve.config_hash = result.config_hash;
    curve.mse.assign(config.steps, 0.0);
    for (const Partial& part : partials) {
      for (std::size_t k = 0; k < config.steps; ++k) curve.mse[k] += part.mse[a][k];
    }
    for (double& v : curve.mse) v *= inv;
    result.curves.push_back(std::move(curve));

    if (config.record_weights) {
      std::vector<QVector> mean = partials.front().weights[a];
      for (std::size_t p = 1; p < parts; ++p) {
        for (std::size_t k = 0; k < config.steps; ++k) {
          for (std::size_t n = 0; n < mean[k].size(); ++n) mean[k][n] += partials[p].weights[a][k][n];
        }
      }
      for (auto& row : mean) {
        for (auto& q : row) q *= inv;
      }
      result.mean_weights.push_back(std::move(mean));
    }
  }
  result.report = steady_state_report(result.curves, config.final_window);
  return result;
}

}  // namespace qaf::bench

namespace qaf::bench {
namespace {

Eigen::MatrixXd mixing_of(const SystemIdConfig& config) {
  const auto n = static_cast<Eigen::Index>(config.order());
  if (config.mixing.size() == 0) return Eigen::MatrixXd::Identity(n, n);
  if (config.mixing.rows() != n || config.mixing.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "mixing matrix must be N x N");
  }
  return config.mixing;
}

}  // namespace

QMatrix system_id_covariance(const SystemIdConfig& config) {
  const Eigen::MatrixXd l = mixing_of(config);
  const Eigen::MatrixXd r = l * l.transpose();
  QMatrix out(config.order(), config.order());
  for (std::size_t a = 0; a < config.order(); ++a) {
    for (std::size_t b = 0; b < config.order(); ++b) {
      out(a, b) = {r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), 0, 0, 0};
    }
  }
  return out;
}

double conjugate_power(const SystemIdConfig& config) {
  if (config.conjugate_part.empty()) return 0.0;
  const std::size_t n = config.order();
  if (config.conjugate_part.size() != 3 * n) {
    throw Error(ErrorKind::DimensionMismatch, "conjugate part must hold 3N coefficients");
  }
  const QMatrix R = system_id_covariance(config);
  constexpr std::array<Axis, 3> kAxes{Axis::I, Axis::J, Axis::K};
  double power = 0.0;
  for (std::size_t b = 0; b < 3; ++b) {
    const QMatrix Rb = involution(R, kAxes[b]);
    const std::span<const Quaternion> w(config.conjugate_part.data() + b * n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) power += (w[r] * Rb(r, c) * conjugate(w[c])).r;
    }
  }
  return power;
}

std::vector<SystemIdOutcome> run_system_identification(const SystemIdConfig& config,
                                                       std::span<const AlgorithmRun> algorithms) {
  const std::size_t n = config.order();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "plant is empty");
  if (!config.conjugate_part.empty() && config.conjugate_part.size() != 3 * n) {
    throw Error(ErrorKind::DimensionMismatch, "conjugate part must hold 3N coefficients");
  }
  if (config.trials < 1 || config.window < 1 || config.window > config.steps) {
    throw Error(ErrorKind::InvalidArgument, "need trials >= 1 and 1 <= window <= steps");
  }
  const Eigen::MatrixXd l = mixing_of(config);
  QVector full_plant = config.plant;
  if (!config.conjugate_part.empty()) {
    full_plant.insert(full_plant.end(), config.conjugate_part.begin(), config.conjugate_part.end());
  }

  std::vector<SystemIdOutcome> out(algorithms.size());
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    out[a].algorithm = algorithms[a].algorithm;
    out[a].mu = algorithms[a].mu;
    out[a].trial_mse.reserve(config.trials);
  }

  std::vector<QVector> inputs(config.steps, QVector(n));
  std::vector<Quaternion> desired(config.steps);
  std::vector<Quaternion> noise(config.steps);
  QVector z(n);
  const double scale = 1.0 / static_cast<double>(config.window * config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng(derive_seed(config.seed, t));
    for (std::size_t k = 0; k < config.steps; ++k) {
      for (auto& q : z) q = rng.gaussian_quaternion(1.0);
      for (std::size_t r = 0; r < n; ++r) {
        Quaternion acc;
        for (std::size_t c = 0; c < n; ++c) {
          acc += l(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * z[c];
        }
        inputs[k][r] = acc;
      }
      noise[k] = rng.gaussian_quaternion(config.noise_variance);
      const QVector xa = config.conjugate_part.empty() ? inputs[k] : stats::augment(inputs[k]);
      desired[k] = dot_t(full_plant, xa) + noise[k];
    }
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      filters::FilterConfig fc;
      fc.algorithm = algorithms[a].algorithm;
      fc.order = n;
      fc.step_size = algorithms[a].mu;
      const filters::RunResult run = filters::run_filter(fc, inputs, desired);
      double mse = 0.0;
      double emse = 0.0;
      for (std::size_t k = config.steps - config.window; k < config.steps; ++k) {
        mse += run.squared_error[k];
        emse += norm2(run.errors[k] - noise[k]);
      }
      out[a].mse += mse * scale;
      out[a].emse += emse * scale;
      out[a].trial_mse.push_back(mse / static_cast<double>(config.window));
    }
  }
  return out;
}

}  // namespace qaf::bench
