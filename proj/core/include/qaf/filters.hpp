#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qaf/qlinalg.hpp"
#include "qaf/stats.hpp"

namespace qaf::filters {

enum class Algorithm { QLMS, HRQLMS, IQLMS, WLQLMS, WLIQLMS };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms{Algorithm::QLMS, Algorithm::HRQLMS, Algorithm::IQLMS,
                                                         Algorithm::WLQLMS, Algorithm::WLIQLMS};

[[nodiscard]] std::string_view to_string(Algorithm algo) noexcept;
// Accepts names like "QLMS", "hr-qlms", "WL_IQLMS".
[[nodiscard]] std::optional<Algorithm> parse_algorithm(std::string_view name);
[[nodiscard]] constexpr bool is_widely_linear(Algorithm algo) noexcept {
  return algo == Algorithm::WLQLMS || algo == Algorithm::WLIQLMS;
}

// Transpose: y = w^T x. Hermitian: y = w^H x.
enum class OutputConvention { Transpose, Hermitian };

struct FilterConfig {
  Algorithm algorithm = Algorithm::IQLMS;
  std::size_t order = 4;
  double step_size = 0.01;
  OutputConvention convention = OutputConvention::Transpose;

  [[nodiscard]] bool widely_linear() const noexcept { return is_widely_linear(algorithm); }
  [[nodiscard]] std::size_t weight_count() const noexcept { return widely_linear() ? 4 * order : order; }
  // Throws InvalidArgument unless order >= 1 and step_size > 0.
  void validate() const;
};

struct FilterState {
  QVector weights;
  std::uint64_t steps = 0;
};

[[nodiscard]] FilterState make_state(const FilterConfig& config);

// Weightings of the real and vector parts of the update.
struct UnifiedCoefficients {
  double a = 0.75, b = 0.75, c = 0.75, d = 0.75;

  [[nodiscard]] static constexpr UnifiedCoefficients qlms() noexcept { return {0.25, 0.75, 0.75, 0.25}; }
  [[nodiscard]] static constexpr UnifiedCoefficients hr_qlms() noexcept { return {0.25, 0.25, 0.75, 0.75}; }
  [[nodiscard]] static constexpr UnifiedCoefficients iqlms() noexcept { return {0.75, 0.75, 0.75, 0.75}; }
};

[[nodiscard]] Quaternion filter_output(std::span<const Quaternion> weights, std::span<const Quaternion> x,
                                       OutputConvention convention = OutputConvention::Transpose);

// Each step computes e = d - y from the current weights, applies the update and returns e.
// A non-finite update leaves the state untouched and throws NonFiniteUpdate.
//
// QLMS     dw = mu (e x*/2 - x* e*/4)
// HR-QLMS  dw = mu (e x*/2 - x e*/4)
// IQLMS    dw = 3/4 mu e x*
// Under the Hermitian convention the same rules act on conj(w).
Quaternion step_qlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                     OutputConvention convention = OutputConvention::Transpose);
Quaternion step_hr_qlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                        OutputConvention convention = OutputConvention::Transpose);
Quaternion step_iqlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                      OutputConvention convention = OutputConvention::Transpose);

// Re[w] += a mu Re[e Re x] - b mu Re[e Im x]
// Im[w] += c mu Im[e Re x] - d mu Im[e Im x]
Quaternion step_unified(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                        const UnifiedCoefficients& coeffs,
                        OutputConvention convention = OutputConvention::Transpose);

// x has length N; the state holds 4N weights [u, v, g, h] acting on x^a = [x, x^i, x^j, x^k].
// WL-QLMS   dw^a = mu (e x^a*/2 - x^a e*/4)
// WL-IQLMS  dw^a = 3/4 mu e x^a*
Quaternion step_wl_qlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                        OutputConvention convention = OutputConvention::Transpose);
Quaternion step_wl_iqlms(FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                         OutputConvention convention = OutputConvention::Transpose);

Quaternion step(Algorithm algo, FilterState& state, std::span<const Quaternion> x, Quaternion d, double mu,
                OutputConvention convention = OutputConvention::Transpose);

// Output for a strict (N weights) or widely linear (4N weights) state on an N-long regressor.
[[nodiscard]] Quaternion predict(const FilterState& state, std::span<const Quaternion> x,
                                 OutputConvention convention = OutputConvention::Transpose);

// Four real channels with a 4x4 grid of N-tap real weight vectors: y_c = sum_m W[c][m] . x_m.
struct Real4chState {
  std::size_t order = 0;
  std::array<std::array<std::vector<double>, 4>, 4> W;

  explicit Real4chState(std::size_t n = 0);
};

using RealChannels = std::array<std::vector<double>, 4>;

[[nodiscard]] std::array<double, 4> real_4ch_output(const Real4chState& state, const RealChannels& x);
// W[c][m] += mu e_c x_m, the steepest descent of (e_r^2 + e_i^2 + e_j^2 + e_k^2)/2.
std::array<double, 4> step_real_4ch_lms(Real4chState& state, const RealChannels& x, const std::array<double, 4>& d,
                                        double mu);

// Real channel layout of a quaternion regressor.
[[nodiscard]] RealChannels to_channels(std::span<const Quaternion> x);
// Real 4x4 grid equivalent to augmented weights [u, v, g, h].
[[nodiscard]] Real4chState to_real_4ch(std::span<const Quaternion> augmented_weights);
// Real LMS step that tracks WL-IQLMS at step mu: twice the step of the e x^a*/2 form of WL-IQLMS.
[[nodiscard]] constexpr double dual_real_step(double wl_iqlms_mu) noexcept { return 2.0 * (1.5 * wl_iqlms_mu); }

// Prediction regressor [y(k-h), ..., y(k-h-N+1)], zero before the start of the stream.
void prediction_regressor(std::span<const Quaternion> stream, std::size_t k, std::size_t order, std::size_t horizon,
                          QVector& out);

struct RunOptions {
  std::size_t horizon = 1;
  bool record_weights = false;
};

struct RunResult {
  std::vector<double> squared_error;
  std::vector<Quaternion> errors;
  std::vector<QVector> weight_trajectory;  // weights after each step, when recorded
  FilterState final_state;
};

// One-step-ahead prediction of the stream: d(k) = y(k), x(k) from prediction_regressor.
[[nodiscard]] RunResult run_filter(const FilterConfig& config, std::span<const Quaternion> stream,
                                   const RunOptions& options = {});
// System identification with explicit regressors and desired responses.
[[nodiscard]] RunResult run_filter(const FilterConfig& config, std::span<const QVector> inputs,
                                   std::span<const Quaternion> desired, const RunOptions& options = {});

// w_o^T = r^T R^{-1}. Throws SingularCovariance when cond(R) > 1e12.
[[nodiscard]] QVector wiener_strict(const stats::AugmentedStats& stats, std::span<const Quaternion> r_dx);
// w_o^{aT} = r^{aT} (R^a)^{-1} with r^a = E[d x^{a*}] of length 4N.
[[nodiscard]] QVector wiener_widely_linear(const stats::AugmentedStats& stats, std::span<const Quaternion> r_dxa);

// | |r(k+1)|^2 + |e_a|^2/|x|^2 - |r(k)|^2 - |e_p|^2/|x|^2 | with r = w_o - w.
// Throws ZeroRegressor when x = 0.
[[nodiscard]] double energy_conservation_residual(std::span<const Quaternion> w_before,
                                                  std::span<const Quaternion> w_after,
                                                  std::span<const Quaternion> w_opt, std::span<const Quaternion> x,
                                                  Quaternion e_a, Quaternion e_p);
// e = r^H x for r = w_o - w.
[[nodiscard]] Quaternion weight_error_output(std::span<const Quaternion> w, std::span<const Quaternion> w_opt,
                                             std::span<const Quaternion> x);

// CSV with columns step,sq_error,e_r,e_i,e_j,e_k.
void write_error_history(std::ostream& os, const RunResult& result);
// One "r,i,j,k" line per weight.
void write_state(std::ostream& os, const FilterState& state);
[[nodiscard]] FilterState read_state(std::istream& is);

}  // namespace qaf::filters
