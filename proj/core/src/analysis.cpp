#include "qaf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "qaf/error.hpp"

namespace qaf::analysis {
namespace {

void require_hermitian(const QMatrix& R) {
  if (!R.square()) throw Error(ErrorKind::DimensionMismatch, "covariance must be square");
  if (!is_hermitian(R, 1e-9)) throw Error(ErrorKind::NotHermitian, "covariance is not Hermitian");
}

// The component-split relations for QLMS and HR-QLMS assume a real-valued R_x.
void require_real_entries(const QMatrix& R) {
  double scale = 0.0;
  double imag = 0.0;
  for (const Quaternion& q : R.data()) {
    scale = std::max(scale, norm(q));
    imag = std::max(imag, norm(vector_part(q)));
  }
  if (imag > 1e-12 * std::max(scale, 1e-300)) {
    throw Error(ErrorKind::AssumptionViolated, "covariance has non-zero vector parts");
  }
}

Eigen::MatrixXd scale_component_columns(const Eigen::MatrixXd& a, std::size_t n, double s_r, double s_v) {
  Eigen::VectorXd d(4 * static_cast<Eigen::Index>(n));
  const auto nn = static_cast<Eigen::Index>(n);
  d.head(nn).setConstant(s_r);
  d.tail(3 * nn).setConstant(s_v);
  return a * d.asDiagonal();
}

std::vector<double> sorted_real_eigenvalues(const Eigen::MatrixXd& m, bool symmetric) {
  std::vector<double> out;
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    out.assign(ev.data(), ev.data() + ev.size());
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    const Eigen::VectorXcd& ev = solver.eigenvalues();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index n = 0; n < ev.size(); ++n) {
      if (std::abs(ev(n).imag()) > 1e-8 * scale) {
        throw Error(ErrorKind::AssumptionViolated, "governing matrix has complex eigenvalues");
      }
      out.push_back(ev(n).real());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double lambda_max_of(Algorithm algo, const QMatrix& R_x) { return governing_eigenvalues(algo, R_x).back(); }

}  // namespace

Eigen::MatrixXd component_embedding(const QMatrix& R) {
  if (!R.square()) throw Error(ErrorKind::DimensionMismatch, "component embedding needs a square matrix");
  const std::size_t n = R.rows();
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a(4 * nn, 4 * nn);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t s = 0; s < n; ++s) {
      // Output element c collects r_s R(s, c).
      const Eigen::Matrix4d rm = right_matrix(R(s, c));
      for (Eigen::Index p = 0; p < 4; ++p) {
        for (Eigen::Index q = 0; q < 4; ++q) {
          a(p * nn + static_cast<Eigen::Index>(c), q * nn + static_cast<Eigen::Index>(s)) = rm(p, q);
        }
      }
    }
  }
  return a;
}

ConvergenceMatrices convergence_matrices(const QMatrix& R_x) {
  require_hermitian(R_x);
  ConvergenceMatrices m;
  m.order = R_x.rows();
  m.R_a = component_embedding(R_x);
  m.R_b = scale_component_columns(m.R_a, m.order, 1.0 / 3.0, 1.0);
  m.R_c = scale_component_columns(m.R_a, m.order, 5.0 / 6.0, 0.5);
  return m;
}

Eigen::MatrixXd mean_recursion_matrix(Algorithm algo, const QMatrix& R_x) {
  const ConvergenceMatrices m = convergence_matrices(R_x);
  switch (algo) {
    case Algorithm::IQLMS:
    case Algorithm::WLIQLMS: return m.R_a;
    case Algorithm::HRQLMS: return m.R_b;
    case Algorithm::QLMS: return m.R_c;
    case Algorithm::WLQLMS: break;
  }
  throw Error(ErrorKind::InvalidArgument, "no mean recursion matrix for WL-QLMS");
}

std::vector<double> governing_eigenvalues(Algorithm algo, const QMatrix& R_x) {
  const Eigen::MatrixXd m = mean_recursion_matrix(algo, R_x);
  const bool symmetric = algo == Algorithm::IQLMS || algo == Algorithm::WLIQLMS;
  if (!symmetric) require_real_entries(R_x);
  return sorted_real_eigenvalues(m, symmetric);
}

StepSizeBound step_size_bound(Algorithm algo, const QMatrix& R_x) {
  const Eigen::MatrixXd m = mean_recursion_matrix(algo, R_x);
  StepSizeBound b;
  b.algorithm = algo;
  b.lambda_max = lambda_max_of(algo, R_x);
  b.lambda_bound = 8.0 / (3.0 * b.lambda_max);
  b.trace_bound = 8.0 / (3.0 * m.trace() / 4.0);
  return b;
}

double eigenvalue_spread(Algorithm algo, const QMatrix& R_x) {
  const std::vector<double> ev = governing_eigenvalues(algo, R_x);
  const double hi = ev.back();
  const double lo = ev.front();
  if (!(lo >= 1e-12 * hi) || !(hi > 0.0)) {
    throw Error(ErrorKind::SingularMatrix, "smallest eigenvalue is negligible");
  }
  return hi / lo;
}

EmsePrediction predict_emse(Algorithm algo, double mu, const QMatrix& R, double noise_variance,
                            double conjugate_term) {
  if (algo != Algorithm::IQLMS && algo != Algorithm::WLIQLMS) {
    throw Error(ErrorKind::InvalidArgument, "EMSE prediction is available for IQLMS and WL-IQLMS only");
  }
  if (!(mu >= 0.0) || !(noise_variance >= 0.0) || !(conjugate_term >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "EMSE inputs must be non-negative");
  }
  require_hermitian(R);
  EmsePrediction p;
  p.algorithm = algo;
  p.mu = mu;
  p.trace = trace(R).r;
  p.noise_variance = noise_variance;
  p.conjugate_term = algo == Algorithm::WLIQLMS ? 0.0 : conjugate_term;
  const double alpha = 0.75 * mu;
  const double load = alpha * p.trace;
  if (load >= 2.0) {
    throw Error(ErrorKind::StepTooLarge, "3/4 mu tr(R) = " + std::to_string(load) + " is not below 2");
  }
  const double drive = p.trace * (noise_variance + p.conjugate_term);
  p.emse_small = 0.5 * alpha * drive;
  p.emse_large = alpha * drive / (2.0 - load);
  return p;
}

std::vector<ModeDecay> empirical_mode_decay(std::span<const std::vector<QVector>> trials, const QMatrix& R_x,
                                            double mu, ModeFitWindow window) {
  if (trials.size() < 50) {
    throw Error(ErrorKind::InsufficientTrials, std::to_string(trials.size()) + " trials, at least 50 required");
  }
  require_hermitian(R_x);
  const std::size_t n = R_x.rows();
  const std::size_t steps = trials.front().size();
  for (const auto& t : trials) {
    if (t.size() != steps) throw Error(ErrorKind::RaggedInput, "trials have different lengths");
  }
  if (window.last >= steps || window.first + 2 > window.last) {
    throw Error(ErrorKind::InvalidArgument, "fit window does not fit inside the recorded steps");
  }

  const auto dim = static_cast<Eigen::Index>(4 * n);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(component_embedding(R_x));
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd& lambda = solver.eigenvalues();

  const std::size_t modes = n;
  const std::size_t count = window.last - window.first + 1;
  std::vector<std::vector<double>> log_amp(modes, std::vector<double>(count));
  std::vector<bool> usable(modes, true);
  Eigen::VectorXd mean(dim);
  for (std::size_t k = window.first; k <= window.last; ++k) {
    mean.setZero();
    for (const auto& t : trials) {
      if (t[k].size() != n) throw Error(ErrorKind::DimensionMismatch, "weight error length differs from R_x");
      for (std::size_t s = 0; s < n; ++s) {
        const auto ss = static_cast<Eigen::Index>(s);
        mean(ss) += t[k][s].r;
        mean(nn + ss) += t[k][s].i;
        mean(2 * nn + ss) += t[k][s].j;
        mean(3 * nn + ss) += t[k][s].k;
      }
    }
    mean /= static_cast<double>(trials.size());
    const Eigen::VectorXd proj = v.transpose() * mean;
    for (std::size_t m = 0; m < modes; ++m) {
      const double amp = proj.segment(4 * static_cast<Eigen::Index>(m), 4).norm();
      if (!(amp > 0.0)) usable[m] = false;
      log_amp[m][k - window.first] = std::log(std::max(amp, 1e-300));
    }
  }

  std::vector<ModeDecay> out;
  const double kbar = 0.5 * static_cast<double>(window.first + window.last);
  for (std::size_t m = 0; m < modes; ++m) {
    ModeDecay d;
    d.eigenvalue = lambda.segment(4 * static_cast<Eigen::Index>(m), 4).mean();
    d.predicted_rate = 1.0 - 0.75 * mu * d.eigenvalue;
    if (!usable[m]) {
      d.fitted_rate = std::nan("");
      d.relative_error = std::nan("");
      out.push_back(d);
      continue;
    }
    double ybar = 0.0;
    for (double y : log_amp[m]) ybar += y;
    ybar /= static_cast<double>(count);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
      const double dx = static_cast<double>(window.first + t) - kbar;
      sxy += dx * (log_amp[m][t] - ybar);
      sxx += dx * dx;
    }
    const double slope = sxy / sxx;
    d.fitted_rate = std::exp(slope);
    const double predicted_log = std::log(std::abs(d.predicted_rate));
    if (predicted_log == 0.0) {
      d.relative_error = std::abs(slope);
    } else {
      d.relative_error = std::abs(slope - predicted_log) / std::abs(predicted_log);
    }
    out.push_back(d);
  }
  return out;
}

void write_predictions(std::ostream& os, std::span<const PredictionRow> rows) {
  os << "algorithm,mu,predicted_emse_small,predicted_emse_large,measured_emse\n";
  char buf[256];
  for (const PredictionRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%.12g,%.12g\n",
                  std::string(filters::to_string(row.prediction.algorithm)).c_str(), row.prediction.mu,
                  row.prediction.emse_small, row.prediction.emse_large, row.measured_emse);
    os << buf;
  }
  if (!os) throw Error(ErrorKind::IoError, "failed writing predictions");
}

}  // namespace qaf::analysis
