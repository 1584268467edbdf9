#include "qaf/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "qaf/error.hpp"

namespace qaf {
namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* what) {
  require_same(a.rows(), b.rows(), what);
  require_same(a.cols(), b.cols(), what);
}

}  // namespace

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t d = 0; d < n; ++d) m(d, d) = kOne;
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_same_shape(*this, o, "matrix add");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_same_shape(*this, o, "matrix sub");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) noexcept {
  for (auto& q : data_) q *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(const QMatrix& a, const QMatrix& b) { return matmul(a, b); }

QVector add(std::span<const Quaternion> a, std::span<const Quaternion> b) {
  require_same(a.size(), b.size(), "vector add");
  QVector out(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] + b[n];
  return out;
}

QVector sub(std::span<const Quaternion> a, std::span<const Quaternion> b) {
  require_same(a.size(), b.size(), "vector sub");
  QVector out(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] - b[n];
  return out;
}

QVector scale(std::span<const Quaternion> a, double s) {
  QVector out(a.begin(), a.end());
  for (auto& q : out) q *= s;
  return out;
}

QVector conjugate(std::span<const Quaternion> x) {
  QVector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](const Quaternion& q) { return conjugate(q); });
  return out;
}

QVector involution(std::span<const Quaternion> x, Axis axis) {
  QVector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [axis](const Quaternion& q) { return involution(q, axis); });
  return out;
}

QMatrix conjugate(const QMatrix& a) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t n = 0; n < a.data().size(); ++n) out.data()[n] = conjugate(a.data()[n]);
  return out;
}

QMatrix involution(const QMatrix& a, Axis axis) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t n = 0; n < a.data().size(); ++n) out.data()[n] = involution(a.data()[n], axis);
  return out;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  require_same(a.cols(), b.rows(), "matmul");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t m = 0; m < a.cols(); ++m) {
      const Quaternion lhs = a(r, m);
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += lhs * b(m, c);
    }
  }
  return out;
}

QVector matvec(const QMatrix& a, std::span<const Quaternion> x) {
  require_same(a.cols(), x.size(), "matvec");
  QVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Quaternion acc;
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

QVector rowvec_mul(std::span<const Quaternion> x, const QMatrix& a) {
  require_same(x.size(), a.rows(), "rowvec_mul");
  QVector out(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] += x[r] * a(r, c);
  }
  return out;
}

QMatrix transpose(const QMatrix& a) {
  QMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  }
  return out;
}

QMatrix hermitian_transpose(const QMatrix& a) {
  QMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = conjugate(a(r, c));
  }
  return out;
}

QMatrix vec_outer(std::span<const Quaternion> x, std::span<const Quaternion> y) {
  QMatrix out(x.size(), y.size());
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t c = 0; c < y.size(); ++c) out(r, c) = x[r] * conjugate(y[c]);
  }
  return out;
}

QMatrix vec_outer_t(std::span<const Quaternion> x, std::span<const Quaternion> y) {
  QMatrix out(x.size(), y.size());
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t c = 0; c < y.size(); ++c) out(r, c) = x[r] * y[c];
  }
  return out;
}

Quaternion dot_t(std::span<const Quaternion> w, std::span<const Quaternion> x) {
  require_same(w.size(), x.size(), "dot_t");
  Quaternion acc;
  for (std::size_t n = 0; n < w.size(); ++n) acc += w[n] * x[n];
  return acc;
}

Quaternion dot_h(std::span<const Quaternion> w, std::span<const Quaternion> x) {
  require_same(w.size(), x.size(), "dot_h");
  Quaternion acc;
  for (std::size_t n = 0; n < w.size(); ++n) acc += conjugate(w[n]) * x[n];
  return acc;
}

double squared_norm(std::span<const Quaternion> x) noexcept {
  double acc = 0.0;
  for (const auto& q : x) acc += norm2(q);
  return acc;
}

double frobenius_norm(const QMatrix& a) noexcept { return std::sqrt(squared_norm(a.data())); }

double max_abs_diff(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const Quaternion> a, std::span<const Quaternion> b) {
  require_same(a.size(), b.size(), "max_abs_diff");
  double worst = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) worst = std::max(worst, norm(a[n] - b[n]));
  return worst;
}

Quaternion trace(const QMatrix& a) {
  require_same(a.rows(), a.cols(), "trace");
  Quaternion acc;
  for (std::size_t d = 0; d < a.rows(); ++d) acc += a(d, d);
  return acc;
}

bool is_hermitian(const QMatrix& a, double tol) {
  if (!a.square()) return false;
  const double scale = std::max(1.0, frobenius_norm(a));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = r; c < a.cols(); ++c) {
      if (norm(a(r, c) - conjugate(a(c, r))) > tol * scale) return false;
    }
  }
  return true;
}

Eigen::Matrix4d left_matrix(const Quaternion& a) noexcept {
  Eigen::Matrix4d m;
  m << a.r, -a.i, -a.j, -a.k,
       a.i,  a.r, -a.k,  a.j,
       a.j,  a.k,  a.r, -a.i,
       a.k, -a.j,  a.i,  a.r;
  return m;
}

Eigen::Matrix4d right_matrix(const Quaternion& b) noexcept {
  Eigen::Matrix4d m;
  m << b.r, -b.i, -b.j, -b.k,
       b.i,  b.r,  b.k, -b.j,
       b.j, -b.k,  b.r,  b.i,
       b.k,  b.j, -b.i,  b.r;
  return m;
}

Eigen::Vector4d to_real(const Quaternion& q) noexcept { return {q.r, q.i, q.j, q.k}; }

Quaternion from_real(const Eigen::Ref<const Eigen::Vector4d>& v) noexcept { return {v(0), v(1), v(2), v(3)}; }

Eigen::MatrixXd real_embedding(const QMatrix& m) {
  if (!m.square()) {
    throw Error(ErrorKind::DimensionMismatch, "real_embedding needs a square matrix");
  }
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd e(4 * n, 4 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      e.block<4, 4>(4 * r, 4 * c) = left_matrix(m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
    }
  }
  return e;
}

QMatrix from_real_embedding(const Eigen::MatrixXd& e) {
  if (e.rows() != e.cols() || e.rows() % 4 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "embedding must be square with size divisible by 4");
  }
  const auto n = static_cast<std::size_t>(e.rows() / 4);
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m(r, c) = from_real(e.block<4, 1>(static_cast<Eigen::Index>(4 * r), static_cast<Eigen::Index>(4 * c)));
    }
  }
  return m;
}

std::vector<double> hermitian_eigenvalues(const QMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "eigenvalues need a square matrix");
  if (!is_hermitian(a, 1e-9)) throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian");
  const Eigen::MatrixXd e = real_embedding(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (e + e.transpose()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<double> out;
  out.reserve(a.rows());
  for (Eigen::Index q = 0; q + 3 < ev.size(); q += 4) {
    const double lo = ev(q);
    const double hi = ev(q + 3);
    if (hi - lo > 1e-8 * scale) {
      throw Error(ErrorKind::AssumptionViolated, "embedding eigenvalues do not cluster in quadruples");
    }
    out.push_back(0.25 * (ev(q) + ev(q + 1) + ev(q + 2) + ev(q + 3)));
  }
  return out;
}

double condition_number(const QMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "condition number needs a square matrix");
  if (a.rows() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_embedding(a));
  const Eigen::VectorXd& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

QMatrix inverse(const QMatrix& a, double max_condition) {
  const double cond = condition_number(a);
  if (!(cond <= max_condition)) {
    throw Error(ErrorKind::SingularMatrix, "condition number " + std::to_string(cond) + " too large");
  }
  const Eigen::MatrixXd e = real_embedding(a);
  return from_real_embedding(e.partialPivLu().inverse());
}

}  // namespace qaf
