#include "qaf/filters.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qaf/error.hpp"

namespace qaf::filters {
namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": got " + std::to_string(got) + ", expected " + std::to_string(want));
  }
}

// Commits w + delta unless any entry is non-finite.
void commit(FilterState& state, const QVector& delta, bool conjugate_delta) {
  QVector next(state.weights.size());
  for (std::size_t n = 0; n < next.size(); ++n) {
    next[n] = state.weights[n] + (conjugate_delta ? conjugate(delta[n]) : delta[n]);
    if (!is_finite(next[n])) {
      throw Error(ErrorKind::NonFiniteUpdate, "update of weight " + std::to_string(n) + " is not finite");
    }
  }
  state.weights = std::move(next);
  ++state.steps;
}

// Error of the transpose-form filter acting on u = w (or conj(w) for the Hermitian convention).
Quaternion error_of(const FilterState& state, std::span<const Quaternion> x, Quaternion d,
                    OutputConvention convention) {
  return d - filter_output(state.weights, x, convention);
}

enum class Rule { QLMS, HRQLMS, IQLMS };

Quaternion rule_delta(Rule rule, Quaternion e, Quaternion x, double mu) {
  switch (rule) {
    case Rule::QLMS: return mu * (0.5 * (e * conjugate(x)) - 0.25 * (conjugate(x) * conjugate(e)));
    case Rule::HRQLMS: return mu * (0.5 * (e * conjugate(x)) - 0.25 * (x * conjugate(e)));
    case Rule::IQLMS: return (0.75 * mu) * (e * conjugate(x));
  }
  return {};
}

Quaternion apply_rule(Rule rule, FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                      OutputConvention convention) {
  require_size(state.weights.size(), x.size(), "weights vs regressor");
  const Quaternion e = error_of(state, x, d, convention);
  QVector delta(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) delta[n] = rule_delta(rule, e, x[n], mu);
  commit(state, delta, convention == OutputConvention::Hermitian);
  return e;
}

Quaternion apply_rule_wl(Rule rule, FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                         OutputConvention convention) {
  require_size(state.weights.size(), 4 * x.size(), "augmented weights vs regressor");
  const QVector xa = stats::augment(x);
  return apply_rule(rule, state, xa, d, mu, convention);
}

std::string normalise(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

void write_quaternion_line(std::ostream& os, const Quaternion& q) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", q.r, q.i, q.j, q.k);
  os << buf;
}

}  // namespace

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::QLMS: return "QLMS";
    case Algorithm::HRQLMS: return "HR-QLMS";
    case Algorithm::IQLMS: return "IQLMS";
    case Algorithm::WLQLMS: return "WL-QLMS";
    case Algorithm::WLIQLMS: return "WL-IQLMS";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  const std::string key = normalise(name);
  for (Algorithm a : kAllAlgorithms) {
    if (normalise(to_string(a)) == key) return a;
  }
  return std::nullopt;
}

void FilterConfig::validate() const {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "filter order must be at least 1");
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw Error(ErrorKind::InvalidArgument, "step size must be positive and finite");
  }
}

FilterState make_state(const FilterConfig& config) {
  config.validate();
  return FilterState{QVector(config.weight_count()), 0};
}

Quaternion filter_output(std::span<const Quaternion> weights, std::span<const Quaternion> x,
                         OutputConvention convention) {
  return convention == OutputConvention::Transpose ? dot_t(weights, x) : dot_h(weights, x);
}

Quaternion step_qlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                     OutputConvention convention) {
  return apply_rule(Rule::QLMS, state, x, d, mu, convention);
}

Quaternion step_hr_qlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                        OutputConvention convention) {
  return apply_rule(Rule::HRQLMS, state, x, d, mu, convention);
}

Quaternion step_iqlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                      OutputConvention convention) {
  return apply_rule(Rule::IQLMS, state, x, d, mu, convention);
}

Quaternion step_unified(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                        const UnifiedCoefficients& coeffs, OutputConvention convention) {
  require_size(state.weights.size(), x.size(), "weights vs regressor");
  const Quaternion e = error_of(state, x, d, convention);
  QVector delta(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    const Quaternion e_re = e * x[n].r;
    const Quaternion e_im = e * vector_part(x[n]);
    const double re = coeffs.a * mu * e_re.r - coeffs.b * mu * e_im.r;
    const Quaternion im = coeffs.c * mu * vector_part(e_re) - coeffs.d * mu * vector_part(e_im);
    delta[n] = Quaternion{re, im.i, im.j, im.k};
  }
  commit(state, delta, convention == OutputConvention::Hermitian);
  return e;
}

Quaternion step_wl_qlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                        OutputConvention convention) {
  return apply_rule_wl(Rule::HRQLMS, state, x, d, mu, convention);
}

Quaternion step_wl_iqlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                         OutputConvention convention) {
  return apply_rule_wl(Rule::IQLMS, state, x, d, mu, convention);
}

Quaternion step(Algorithm algo, FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                OutputConvention convention) {
  switch (algo) {
    case Algorithm::QLMS: return step_qlms(state, x, d, mu, convention);
    case Algorithm::HRQLMS: return step_hr_qlms(state, x, d, mu, convention);
    case Algorithm::IQLMS: return step_iqlms(state, x, d, mu, convention);
    case Algorithm::WLQLMS: return step_wl_qlms(state, x, d, mu, convention);
    case Algorithm::WLIQLMS: return step_wl_iqlms(state, x, d, mu, convention);
  }
  return {};
}

Quaternion predict(const FilterState& state, std::span<const Quaternion> x, OutputConvention convention) {
  if (state.weights.size() == 4 * x.size() && state.weights.size() != x.size()) {
    const QVector xa = stats::augment(x);
    return filter_output(state.weights, xa, convention);
  }
  return filter_output(state.weights, x, convention);
}

Real4chState::Real4chState(std::size_t n) : order(n) {
  for (auto& row : W) {
    for (auto& cell : row) cell.assign(n, 0.0);
  }
}

std::array<double, 4> real_4ch_output(const Real4chState& state, const RealChannels& x) {
  std::array<double, 4> y{};
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t m = 0; m < 4; ++m) {
      require_size(x[m].size(), state.order, "channel length");
      for (std::size_t n = 0; n < state.order; ++n) y[c] += state.W[c][m][n] * x[m][n];
    }
  }
  return y;
}

std::array<double, 4> step_real_4ch_lms(Real4chState& state, const RealChannels& x, const std::array<double, 4>& d,
                                        double mu) {
  const std::array<double, 4> y = real_4ch_output(state, x);
  std::array<double, 4> e{};
  for (std::size_t c = 0; c < 4; ++c) e[c] = d[c] - y[c];
  auto next = state.W;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t m = 0; m < 4; ++m) {
      for (std::size_t n = 0; n < state.order; ++n) {
        double& w = next[c][m][n];
        w += mu * e[c] * x[m][n];
        if (!std::isfinite(w)) throw Error(ErrorKind::NonFiniteUpdate, "real LMS update is not finite");
      }
    }
  }
  state.W = std::move(next);
  return e;
}

RealChannels to_channels(std::span<const Quaternion> x) {
  RealChannels ch;
  for (auto& c : ch) c.resize(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    ch[0][n] = x[n].r;
    ch[1][n] = x[n].i;
    ch[2][n] = x[n].j;
    ch[3][n] = x[n].k;
  }
  return ch;
}

Real4chState to_real_4ch(std::span<const Quaternion> augmented_weights) {
  if (augmented_weights.size() % 4 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "augmented weight length must be a multiple of 4");
  }
  const std::size_t n_taps = augmented_weights.size() / 4;
  // Sign patterns of x^eta in (r, i, j, k) coordinates for eta = 1, i, j, k.
  constexpr double kSigns[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  Real4chState state(n_taps);
  for (std::size_t n = 0; n < n_taps; ++n) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (std::size_t eta = 0; eta < 4; ++eta) {
      const Eigen::Matrix4d l = left_matrix(augmented_weights[eta * n_taps + n]);
      for (int col = 0; col < 4; ++col) m.col(col) += kSigns[eta][col] * l.col(col);
    }
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t ch = 0; ch < 4; ++ch) {
        state.W[c][ch][n] = m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(ch));
      }
    }
  }
  return state;
}

void prediction_regressor(std::span<const Quaternion> stream, std::size_t k, std::size_t order, std::size_t horizon,
                          QVector& out) {
  out.assign(order, Quaternion{});
  for (std::size_t n = 0; n < order; ++n) {
    const std::size_t lag = horizon + n;
    if (lag <= k) out[n] = stream[k - lag];
  }
}

RunResult run_filter(const FilterConfig& config, std::span<const Quaternion> stream, const RunOptions& options) {
  if (options.horizon < 1) throw Error(ErrorKind::InvalidArgument, "prediction horizon must be at least 1");
  FilterState state = make_state(config);
  RunResult result;
  result.squared_error.reserve(stream.size());
  result.errors.reserve(stream.size());
  QVector x;
  for (std::size_t k = 0; k < stream.size(); ++k) {
    prediction_regressor(stream, k, config.order, options.horizon, x);
    const Quaternion e = step(config.algorithm, state, x, stream[k], config.step_size, config.convention);
    result.errors.push_back(e);
    result.squared_error.push_back(norm2(e));
    if (options.record_weights) result.weight_trajectory.push_back(state.weights);
  }
  result.final_state = std::move(state);
  return result;
}

RunResult run_filter(const FilterConfig& config, std::span<const QVector> inputs, std::span<const Quaternion> desired,
                     const RunOptions& options) {
  require_size(desired.size(), inputs.size(), "desired vs inputs");
  FilterState state = make_state(config);
  RunResult result;
  result.squared_error.reserve(inputs.size());
  result.errors.reserve(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    require_size(inputs[k].size(), config.order, "regressor length");
    const Quaternion e = step(config.algorithm, state, inputs[k], desired[k], config.step_size, config.convention);
    result.errors.push_back(e);
    result.squared_error.push_back(norm2(e));
    if (options.record_weights) result.weight_trajectory.push_back(state.weights);
  }
  result.final_state = std::move(state);
  return result;
}

QVector wiener_strict(const stats::AugmentedStats& stats, std::span<const Quaternion> r_dx) {
  require_size(r_dx.size(), stats.dim(), "cross-correlation length");
  try {
    return rowvec_mul(r_dx, inverse(stats.R));
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::SingularMatrix) throw Error(ErrorKind::SingularCovariance, err.what());
    throw;
  }
}

QVector wiener_widely_linear(const stats::AugmentedStats& stats, std::span<const Quaternion> r_dxa) {
  require_size(r_dxa.size(), 4 * stats.dim(), "augmented cross-correlation length");
  try {
    return rowvec_mul(r_dxa, inverse(stats::augmented_covariance(stats)));
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::SingularMatrix) throw Error(ErrorKind::SingularCovariance, err.what());
    throw;
  }
}

Quaternion weight_error_output(std::span<const Quaternion> w, std::span<const Quaternion> w_opt,
                               std::span<const Quaternion> x) {
  return dot_h(sub(w_opt, w), x);
}

double energy_conservation_residual(std::span<const Quaternion> w_before, std::span<const Quaternion> w_after,
                                    std::span<const Quaternion> w_opt, std::span<const Quaternion> x,
                                    Quaternion e_a, Quaternion e_p) {
  const double xx = squared_norm(x);
  if (!(xx > 0.0)) throw Error(ErrorKind::ZeroRegressor, "regressor has zero energy");
  const double before = squared_norm(sub(w_opt, w_before));
  const double after = squared_norm(sub(w_opt, w_after));
  return std::abs((after + norm2(e_a) / xx) - (before + norm2(e_p) / xx));
}

void write_error_history(std::ostream& os, const RunResult& result) {
  os << "step,sq_error,e_r,e_i,e_j,e_k\n";
  char buf[256];
  for (std::size_t k = 0; k < result.errors.size(); ++k) {
    const Quaternion& e = result.errors[k];
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g,%.12g\n", k, result.squared_error[k], e.r, e.i, e.j,
                  e.k);
    os << buf;
  }
  if (!os) throw Error(ErrorKind::IoError, "failed writing error history");
}

void write_state(std::ostream& os, const FilterState& state) {
  for (const Quaternion& w : state.weights) write_quaternion_line(os, w);
  if (!os) throw Error(ErrorKind::IoError, "failed writing filter state");
}

FilterState read_state(std::istream& is) {
  FilterState state;
  std::string line;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream fields(line);
    Quaternion q;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(fields >> q.r >> c1 >> q.i >> c2 >> q.j >> c3 >> q.k) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw Error(ErrorKind::ParseError, "state line " + std::to_string(row) + " is not r,i,j,k");
    }
    state.weights.push_back(q);
  }
  return state;
}

}  // namespace qaf::filters
