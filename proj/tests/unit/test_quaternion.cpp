#include <cmath>
#include <numbers>

#include "qaf/error.hpp"
#include "qaf/quaternion.hpp"
#include "test_util.hpp"

using namespace qaf;
using qaf::testing::random_quaternion;

TEST(QuaternionTest, UnitProductTable) {
  EXPECT_EQ(kI * kJ, kK);
  EXPECT_EQ(kJ * kI, -kK);
  EXPECT_EQ(kJ * kK, kI);
  EXPECT_EQ(kK * kI, kJ);
  EXPECT_EQ(kI * kI, -kOne);
  EXPECT_EQ(kI * kJ * kK, -kOne);
}

TEST(QuaternionTest, HandExpandedProducts) {
  // (1 + i)(1 + j) = 1 + j + i + ij = 1 + i + j + k
  EXPECT_EQ(mul(Quaternion{1, 1, 0, 0}, Quaternion{1, 0, 1, 0}), (Quaternion{1, 1, 1, 1}));
  // (2 + 3i)(1 - k) = 2 - 2k + 3i - 3ik = 2 + 3i + 3j - 2k
  EXPECT_EQ(Quaternion(2, 3, 0, 0) * Quaternion(1, 0, 0, -1), (Quaternion{2, 3, 3, -2}));
  Rng rng(1);
  const Quaternion q = random_quaternion(rng);
  EXPECT_EQ(kOne * q, q);
  EXPECT_EQ(q * kOne, q);
}

TEST(QuaternionTest, ScalarVectorDecompositionOfProduct) {
  Rng rng(2);
  for (int n = 0; n < 100; ++n) {
    const Quaternion a = random_quaternion(rng);
    const Quaternion b = random_quaternion(rng);
    const double dot = a.i * b.i + a.j * b.j + a.k * b.k;
    const Quaternion cross{0, a.j * b.k - a.k * b.j, a.k * b.i - a.i * b.k, a.i * b.j - a.j * b.i};
    const Quaternion expected = Quaternion{a.r * b.r - dot, 0, 0, 0} + a.r * vector_part(b) + b.r * vector_part(a) + cross;
    EXPECT_QUAT_NEAR(a * b, expected, 1e-13);
  }
}

TEST(QuaternionTest, ConjugateAndInvolutions) {
  const Quaternion q{1, 1, 1, 1};
  EXPECT_EQ(conjugate(q), (Quaternion{1, -1, -1, -1}));
  EXPECT_EQ(involution(q, Axis::I), (Quaternion{1, 1, -1, -1}));
  EXPECT_EQ(involution(q, Axis::J), (Quaternion{1, -1, 1, -1}));
  EXPECT_EQ(involution(q, Axis::K), (Quaternion{1, -1, -1, 1}));
  Rng rng(3);
  for (int n = 0; n < 100; ++n) {
    const Quaternion p = random_quaternion(rng);
    for (Axis a : {Axis::I, Axis::J, Axis::K}) {
      EXPECT_QUAT_NEAR(involution(p, a), -1.0 * (unit(a) * p * unit(a)), 1e-14);
    }
  }
}

TEST(QuaternionTest, NonCommutative) {
  Rng rng(4);
  const Quaternion a = random_quaternion(rng);
  const Quaternion b = random_quaternion(rng);
  EXPECT_GT(norm(a * b - b * a), 1e-3);
}

TEST(QuaternionTest, ComponentViaInvolutions) {
  const Quaternion q{2, 3, -1, 5};
  EXPECT_NEAR(component(q, Part::R), 2.0, 1e-15);
  EXPECT_NEAR(component(q, Part::I), 3.0, 1e-15);
  EXPECT_NEAR(component(q, Part::J), -1.0, 1e-15);
  EXPECT_NEAR(component(q, Part::K), 5.0, 1e-15);
}

TEST(QuaternionTest, ReconstructionFromInvolutionConjugates) {
  Rng rng(5);
  for (int n = 0; n < 200; ++n) {
    const Quaternion q = random_quaternion(rng);
    const Quaternion rebuilt = 0.5 * (conjugate(involution(q, Axis::I)) + conjugate(involution(q, Axis::J)) +
                                      conjugate(involution(q, Axis::K)) - conjugate(q));
    EXPECT_QUAT_NEAR(rebuilt, q, 1e-14);
    const Quaternion qc = conjugate(q);
    EXPECT_QUAT_NEAR(qc, 0.5 * (involution(q, Axis::I) + involution(q, Axis::J) + involution(q, Axis::K) - q), 1e-14);
  }
}

TEST(QuaternionTest, NormAndInverse) {
  const Quaternion q{1, 2, 2, 4};
  EXPECT_DOUBLE_EQ(norm2(q), 25.0);
  EXPECT_DOUBLE_EQ(norm(q), 5.0);
  EXPECT_DOUBLE_EQ((q * conjugate(q)).r, 25.0);
  EXPECT_QUAT_NEAR(q * inverse(q), kOne, 1e-15);
  EXPECT_QUAT_NEAR(inverse(q) * q, kOne, 1e-15);
}

TEST(QuaternionTest, RotateQuarterTurnAboutK) {
  const double h = std::numbers::sqrt2 / 2.0;
  const Quaternion rotor{h, 0, 0, h};
  EXPECT_QUAT_NEAR(rotate(kI, rotor), kJ, 1e-15);
  EXPECT_EQ(rotate(kI, kOne), kI);
}

TEST(QuaternionTest, RotatePreservesNormAndPurity) {
  Rng rng(6);
  for (int n = 0; n < 200; ++n) {
    const Quaternion p = vector_part(random_quaternion(rng));
    const Quaternion r = rng.unit_quaternion();
    const Quaternion out = rotate(p, r);
    EXPECT_NEAR(out.r, 0.0, 1e-14);
    EXPECT_NEAR(norm(out), norm(p), 1e-12 * std::max(1.0, norm(p)));
  }
}

TEST(QuaternionTest, RotateRejectsNonUnitRotor) {
  try {
    (void)rotate(kI, Quaternion{1.0 + 1e-9, 0, 0, 0});
    FAIL() << "expected NonUnitRotor";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnitRotor);
  }
}

TEST(QuaternionPropertyTest, AlgebraLawsOnRandomInputs) {
  Rng rng(7);
  for (int n = 0; n < 10000; ++n) {
    const Quaternion a = random_quaternion(rng);
    const Quaternion b = random_quaternion(rng);
    const Quaternion c = random_quaternion(rng);
    const double scale = norm(a) * norm(b) * norm(c) + 1.0;
    EXPECT_LE(norm((a * b) * c - a * (b * c)), 1e-12 * scale);
    EXPECT_LE(norm(a * (b + c) - (a * b + a * c)), 1e-12 * scale);
    EXPECT_LE(norm(conjugate(a * b) - conjugate(b) * conjugate(a)), 1e-12 * scale);
    EXPECT_NEAR(norm(a * b), norm(a) * norm(b), 1e-12 * (norm(a) * norm(b) + 1e-300));
    for (Axis x : {Axis::I, Axis::J, Axis::K}) {
      EXPECT_EQ(involution(involution(a, x), x), a);
      EXPECT_LE(norm(involution(a * b, x) - involution(a, x) * involution(b, x)), 1e-12 * scale);
      EXPECT_EQ(involution(a + b, x), involution(a, x) + involution(b, x));
    }
    EXPECT_EQ(involution(involution(a, Axis::I), Axis::J), involution(a, Axis::K));
    EXPECT_EQ(involution(involution(a, Axis::J), Axis::I), involution(a, Axis::K));
    EXPECT_EQ(involution(involution(a, Axis::J), Axis::K), involution(a, Axis::I));
    for (Part p : {Part::R, Part::I, Part::J, Part::K}) {
      EXPECT_NEAR(component(a, p), field(a, p), 1e-14 * (norm(a) + 1.0));
    }
  }
}
