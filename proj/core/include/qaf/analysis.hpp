#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "qaf/filters.hpp"
#include "qaf/qlinalg.hpp"

namespace qaf::analysis {

using filters::Algorithm;

// Real 4N x 4N matrices acting on weight-error vectors ordered component-major (index c*N + n).
// Under the transpose convention E[vec r(k+1)] = (I - 3/4 mu M^T) E[vec r(k)], i.e.
// the row form w^T(k+1) = w^T(k) (I - 3/4 mu M).
struct ConvergenceMatrices {
  Eigen::MatrixXd R_a;  // right-multiplication embedding of R_x (IQLMS)
  Eigen::MatrixXd R_b;  // R_a diag(I/3, I, I, I) (HR-QLMS)
  Eigen::MatrixXd R_c;  // R_a diag(5I/6, I/2, I/2, I/2) (QLMS)
  std::size_t order = 0;
};

// x -> x^T R in component-major real coordinates. Symmetric for Hermitian R.
[[nodiscard]] Eigen::MatrixXd component_embedding(const QMatrix& R);

// Throws NotHermitian.
[[nodiscard]] ConvergenceMatrices convergence_matrices(const QMatrix& R_x);

// R_a for IQLMS and WL-IQLMS (pass the augmented covariance for the latter), R_b for HR-QLMS, R_c for QLMS.
[[nodiscard]] Eigen::MatrixXd mean_recursion_matrix(Algorithm algo, const QMatrix& R_x);

// All 4N real eigenvalues of the governing matrix, ascending.
// HR-QLMS and QLMS require R_x with vanishing vector parts (AssumptionViolated otherwise).
[[nodiscard]] std::vector<double> governing_eigenvalues(Algorithm algo, const QMatrix& R_x);

struct StepSizeBound {
  Algorithm algorithm = Algorithm::IQLMS;
  double lambda_max = 0.0;
  double lambda_bound = 0.0;  // 8 / (3 lambda_max)
  double trace_bound = 0.0;   // 8 / (3 tr(M)/4)
};

[[nodiscard]] StepSizeBound step_size_bound(Algorithm algo, const QMatrix& R_x);

// lambda_max / lambda_min of the governing matrix. Throws SingularMatrix if lambda_min < 1e-12 lambda_max.
[[nodiscard]] double eigenvalue_spread(Algorithm algo, const QMatrix& R_x);

struct EmsePrediction {
  Algorithm algorithm = Algorithm::IQLMS;
  double mu = 0.0;
  double trace = 0.0;
  double noise_variance = 0.0;
  double conjugate_term = 0.0;  // E|w^{cH} x^c|^2, the part a strictly linear filter cannot model
  double emse_small = 0.0;
  double emse_large = 0.0;

  [[nodiscard]] double mse_small() const noexcept { return emse_small + conjugate_term + noise_variance; }
  [[nodiscard]] double mse_large() const noexcept { return emse_large + conjugate_term + noise_variance; }
};

// Steady-state EMSE with effective step alpha = 3/4 mu and trace T of R (R^a for WL-IQLMS):
//   small:  alpha T (sigma^2 + c) / 2
//   large:  alpha T (sigma^2 + c) / (2 - alpha T)
// c is dropped for WL-IQLMS. Throws StepTooLarge when alpha T >= 2.
[[nodiscard]] EmsePrediction predict_emse(Algorithm algo, double mu, const QMatrix& R, double noise_variance,
                                          double conjugate_term = 0.0);

struct ModeDecay {
  double eigenvalue = 0.0;
  double predicted_rate = 0.0;  // 1 - 3/4 mu lambda
  double fitted_rate = 0.0;
  double relative_error = 0.0;  // |ln fitted - ln predicted| / |ln predicted|, 0 when both are 1
};

struct ModeFitWindow {
  std::size_t first = 50;
  std::size_t last = 500;
};

// Fits per-mode geometric decay of the trial-averaged weight error of IQLMS.
// trials[t][k] is r(k) = w(k) - w_o for trial t. Throws InsufficientTrials below 50 trials.
[[nodiscard]] std::vector<ModeDecay> empirical_mode_decay(std::span<const std::vector<QVector>> trials,
                                                          const QMatrix& R_x, double mu, ModeFitWindow window = {});

// CSV with columns algorithm,mu,predicted_emse_small,predicted_emse_large,measured_emse.
struct PredictionRow {
  EmsePrediction prediction;
  double measured_emse = 0.0;
};
void write_predictions(std::ostream& os, std::span<const PredictionRow> rows);

}  // namespace qaf::analysis
