#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "qaf/quaternion.hpp"

namespace qaf {

using QVector = std::vector<Quaternion>;

// Dense row-major quaternion matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] static QMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  [[nodiscard]] Quaternion& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  [[nodiscard]] const Quaternion& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  [[nodiscard]] std::span<Quaternion> data() noexcept { return data_; }
  [[nodiscard]] std::span<const Quaternion> data() const noexcept { return data_; }

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s) noexcept;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

[[nodiscard]] QMatrix operator+(QMatrix a, const QMatrix& b);
[[nodiscard]] QMatrix operator-(QMatrix a, const QMatrix& b);
[[nodiscard]] QMatrix operator*(QMatrix a, double s);
[[nodiscard]] QMatrix operator*(const QMatrix& a, const QMatrix& b);

// Vector arithmetic. Sizes must agree (DimensionMismatch otherwise).
[[nodiscard]] QVector add(std::span<const Quaternion> a, std::span<const Quaternion> b);
[[nodiscard]] QVector sub(std::span<const Quaternion> a, std::span<const Quaternion> b);
[[nodiscard]] QVector scale(std::span<const Quaternion> a, double s);

[[nodiscard]] QVector conjugate(std::span<const Quaternion> x);
[[nodiscard]] QVector involution(std::span<const Quaternion> x, Axis axis);
[[nodiscard]] QMatrix conjugate(const QMatrix& a);
[[nodiscard]] QMatrix involution(const QMatrix& a, Axis axis);

[[nodiscard]] QMatrix matmul(const QMatrix& a, const QMatrix& b);
// A x.
[[nodiscard]] QVector matvec(const QMatrix& a, std::span<const Quaternion> x);
// x^T A, returned as a vector.
[[nodiscard]] QVector rowvec_mul(std::span<const Quaternion> x, const QMatrix& a);
[[nodiscard]] QMatrix transpose(const QMatrix& a);
[[nodiscard]] QMatrix hermitian_transpose(const QMatrix& a);

// x y^H.
[[nodiscard]] QMatrix vec_outer(std::span<const Quaternion> x, std::span<const Quaternion> y);
// x y^T.
[[nodiscard]] QMatrix vec_outer_t(std::span<const Quaternion> x, std::span<const Quaternion> y);

// sum_n w_n x_n  (w^T x)
[[nodiscard]] Quaternion dot_t(std::span<const Quaternion> w, std::span<const Quaternion> x);
// sum_n conj(w_n) x_n  (w^H x)
[[nodiscard]] Quaternion dot_h(std::span<const Quaternion> w, std::span<const Quaternion> x);

[[nodiscard]] double squared_norm(std::span<const Quaternion> x) noexcept;
[[nodiscard]] double frobenius_norm(const QMatrix& a) noexcept;
[[nodiscard]] double max_abs_diff(const QMatrix& a, const QMatrix& b);
[[nodiscard]] double max_abs_diff(std::span<const Quaternion> a, std::span<const Quaternion> b);
[[nodiscard]] Quaternion trace(const QMatrix& a);

[[nodiscard]] bool is_hermitian(const QMatrix& a, double tol = 1e-10);

// Real 4x4 matrices of q -> a*q and q -> q*b on (r, i, j, k) coordinates.
[[nodiscard]] Eigen::Matrix4d left_matrix(const Quaternion& a) noexcept;
[[nodiscard]] Eigen::Matrix4d right_matrix(const Quaternion& b) noexcept;
[[nodiscard]] Eigen::Vector4d to_real(const Quaternion& q) noexcept;
[[nodiscard]] Quaternion from_real(const Eigen::Ref<const Eigen::Vector4d>& v) noexcept;

// Left-multiplication representation: 4x4 block (a, b) is left_matrix(M(a, b)).
// Multiplicative and additive homomorphism; Hermitian M maps to a symmetric matrix.
[[nodiscard]] Eigen::MatrixXd real_embedding(const QMatrix& m);
// Inverse of real_embedding on its image (reads the first column of each block).
[[nodiscard]] QMatrix from_real_embedding(const Eigen::MatrixXd& e);

// Eigenvalues of a Hermitian quaternion matrix, ascending, one per quadruple of the embedding.
[[nodiscard]] std::vector<double> hermitian_eigenvalues(const QMatrix& a);

// 2-norm condition number through the embedding's singular values.
[[nodiscard]] double condition_number(const QMatrix& a);

// Two-sided inverse. Throws SingularMatrix when the condition number exceeds max_condition.
[[nodiscard]] QMatrix inverse(const QMatrix& a, double max_condition = 1e12);

}  // namespace qaf
