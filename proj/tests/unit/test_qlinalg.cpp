#include <Eigen/Dense>

#include "qaf/error.hpp"
#include "qaf/qlinalg.hpp"
#include "test_util.hpp"

using namespace qaf;
using qaf::testing::random_hermitian_pd;
using qaf::testing::random_matrix;
using qaf::testing::random_vector;

TEST(QMatrixTest, HermitianTransposeOfScalar) {
  QMatrix m(1, 1);
  m(0, 0) = {1, 2, 3, 4};
  EXPECT_EQ(hermitian_transpose(m)(0, 0), (Quaternion{1, -2, -3, -4}));
}

TEST(QMatrixTest, HermitianTransposeOfProduct) {
  Rng rng(10);
  const QMatrix a = random_matrix(rng, 3, 3);
  const QMatrix b = random_matrix(rng, 3, 3);
  EXPECT_LE(max_abs_diff(hermitian_transpose(a * b), hermitian_transpose(b) * hermitian_transpose(a)), 1e-12);
  // Plain transposition does not reverse quaternion products.
  EXPECT_GT(max_abs_diff(transpose(a * b), transpose(b) * transpose(a)), 1e-3);
}

TEST(QMatrixTest, OuterProductIsHermitian) {
  Rng rng(11);
  const QVector x = random_vector(rng, 4);
  const QMatrix o = vec_outer(x, x);
  EXPECT_LE(max_abs_diff(hermitian_transpose(o), o), 1e-14);
  EXPECT_TRUE(is_hermitian(o));
  EXPECT_NEAR(trace(o).r, squared_norm(x), 1e-12);
}

TEST(QMatrixTest, InnerProductsRespectOrder) {
  Rng rng(12);
  const QVector w = random_vector(rng, 3);
  const QVector x = random_vector(rng, 3);
  Quaternion t, h;
  for (std::size_t n = 0; n < 3; ++n) {
    t += w[n] * x[n];
    h += conjugate(w[n]) * x[n];
  }
  EXPECT_QUAT_NEAR(dot_t(w, x), t, 1e-14);
  EXPECT_QUAT_NEAR(dot_h(w, x), h, 1e-14);
  const Quaternion xhx = dot_h(x, x);
  EXPECT_NEAR(xhx.i, 0.0, 1e-14);
  EXPECT_NEAR(xhx.j, 0.0, 1e-14);
  EXPECT_NEAR(xhx.k, 0.0, 1e-14);
  EXPECT_GE(xhx.r, 0.0);
}

TEST(QMatrixTest, MatvecAndRowvec) {
  Rng rng(13);
  const QMatrix a = random_matrix(rng, 2, 3);
  const QVector x = random_vector(rng, 3);
  const QVector y = matvec(a, x);
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_QUAT_NEAR(y[r], a(r, 0) * x[0] + a(r, 1) * x[1] + a(r, 2) * x[2], 1e-13);
  }
  const QVector z = random_vector(rng, 2);
  const QVector zr = rowvec_mul(z, a);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_QUAT_NEAR(zr[c], z[0] * a(0, c) + z[1] * a(1, c), 1e-13);
}

TEST(QMatrixTest, DimensionMismatchThrows) {
  const QMatrix a(2, 3);
  const QMatrix b(2, 3);
  try {
    (void)matmul(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  EXPECT_THROW((void)matvec(a, QVector(2)), Error);
  EXPECT_THROW((void)dot_t(QVector(2), QVector(3)), Error);
  EXPECT_THROW((void)real_embedding(a), Error);
}

TEST(RealEmbeddingTest, IdentityAndUnits) {
  QMatrix one(1, 1);
  one(0, 0) = kOne;
  EXPECT_TRUE(real_embedding(one).isApprox(Eigen::Matrix4d::Identity()));
  // L(i) applied to the coordinates of j gives the coordinates of k.
  QMatrix i(1, 1);
  i(0, 0) = kI;
  const Eigen::Vector4d out = real_embedding(i) * to_real(kJ);
  EXPECT_TRUE(out.isApprox(to_real(kK)));
}

TEST(RealEmbeddingTest, HomomorphismAndSymmetry) {
  Rng rng(14);
  const QMatrix a = random_matrix(rng, 3, 3);
  const QMatrix b = random_matrix(rng, 3, 3);
  EXPECT_LE((real_embedding(a * b) - real_embedding(a) * real_embedding(b)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((real_embedding(a + b) - real_embedding(a) - real_embedding(b)).cwiseAbs().maxCoeff(), 1e-14);
  const QMatrix h = random_hermitian_pd(rng, 3);
  const Eigen::MatrixXd e = real_embedding(h);
  EXPECT_LE((e - e.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(from_real_embedding(real_embedding(a)), a);
}

TEST(RealEmbeddingTest, RightMatrixMatchesProduct) {
  Rng rng(15);
  for (int n = 0; n < 50; ++n) {
    const Quaternion a = qaf::testing::random_quaternion(rng);
    const Quaternion b = qaf::testing::random_quaternion(rng);
    EXPECT_QUAT_NEAR(from_real(left_matrix(a) * to_real(b)), a * b, 1e-13);
    EXPECT_QUAT_NEAR(from_real(right_matrix(b) * to_real(a)), a * b, 1e-13);
  }
}

TEST(RealEmbeddingTest, HermitianEigenvaluesComeInQuadruples) {
  Rng rng(16);
  const QMatrix h = random_hermitian_pd(rng, 3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_embedding(h));
  const Eigen::VectorXd ev = solver.eigenvalues();
  for (Eigen::Index q = 0; q < 12; q += 4) {
    EXPECT_NEAR(ev(q), ev(q + 3), 1e-9 * ev.maxCoeff());
  }
  const std::vector<double> lambda = hermitian_eigenvalues(h);
  ASSERT_EQ(lambda.size(), 3u);
  double sum = 0.0;
  for (double l : lambda) sum += l;
  EXPECT_NEAR(sum, trace(h).r, 1e-10);
}

TEST(RealEmbeddingTest, HermitianEigenvaluesOfDiagonal) {
  QMatrix d(3, 3);
  d(0, 0) = {3, 0, 0, 0};
  d(1, 1) = {1, 0, 0, 0};
  d(2, 2) = {2, 0, 0, 0};
  const std::vector<double> lambda = hermitian_eigenvalues(d);
  EXPECT_NEAR(lambda[0], 1.0, 1e-12);
  EXPECT_NEAR(lambda[1], 2.0, 1e-12);
  EXPECT_NEAR(lambda[2], 3.0, 1e-12);
}

TEST(QMatrixInverseTest, TwoSidedInverse) {
  Rng rng(17);
  const QMatrix a = random_matrix(rng, 4, 4);
  const QMatrix inv = inverse(a);
  EXPECT_LE(max_abs_diff(a * inv, QMatrix::identity(4)), 1e-10);
  EXPECT_LE(max_abs_diff(inv * a, QMatrix::identity(4)), 1e-10);
}

TEST(QMatrixInverseTest, SingularThrows) {
  QMatrix a(2, 2);
  a(0, 0) = kOne;
  a(0, 1) = kI;
  a(1, 0) = kOne;
  a(1, 1) = kI;
  EXPECT_GT(condition_number(a), 1e12);
  try {
    (void)inverse(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
  }
}
