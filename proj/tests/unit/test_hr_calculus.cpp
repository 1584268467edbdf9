#include <cmath>
#include <limits>

#include "qaf/error.hpp"
#include "qaf/hr_calculus.hpp"
#include "test_util.hpp"

using namespace qaf;
using namespace qaf::hr;
using qaf::testing::random_quaternion;
using qaf::testing::random_vector;

namespace {

double sq_norm_fn(const QVector& q) { return squared_norm(q); }

// Hand-derived partials of sum_n |q_n|^2: 2 q_n componentwise.
Partials sq_norm_partials(const QVector& q) {
  Partials p;
  for (const auto& x : q) {
    p.r.push_back(2 * x.r);
    p.i.push_back(2 * x.i);
    p.j.push_back(2 * x.j);
    p.k.push_back(2 * x.k);
  }
  return p;
}

double max_err(const QVector& a, const QVector& b) { return max_abs_diff(a, b); }

}  // namespace

TEST(FiniteDiffTest, ScalarCalculusExamples) {
  const Partials a = fd_partials([](const QVector& q) { return q[0].r * q[0].r; }, QVector{{3, 0, 0, 0}}, 1e-5);
  EXPECT_NEAR(a.r[0], 6.0, 1e-8);
  EXPECT_NEAR(a.i[0], 0.0, 1e-12);
  EXPECT_NEAR(a.j[0], 0.0, 1e-12);
  EXPECT_NEAR(a.k[0], 0.0, 1e-12);

  const Partials b = fd_partials(sq_norm_fn, QVector{{1, 1, 1, 1}});
  EXPECT_NEAR(b.r[0], 2.0, 1e-8);
  EXPECT_NEAR(b.i[0], 2.0, 1e-8);
  EXPECT_NEAR(b.j[0], 2.0, 1e-8);
  EXPECT_NEAR(b.k[0], 2.0, 1e-8);

  const Partials c = fd_partials([](const QVector&) { return 4.2; }, QVector{{1, 2, 3, 4}, {5, 6, 7, 8}});
  for (std::size_t n = 0; n < 2; ++n) {
    EXPECT_EQ(c.r[n], 0.0);
    EXPECT_EQ(c.k[n], 0.0);
  }
}

TEST(FiniteDiffTest, NonFiniteEvaluationThrows) {
  const RealFieldFn bad = [](const QVector& q) {
    return q[0].r > 0.5 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  try {
    (void)fd_partials(bad, QVector{{0.5, 0, 0, 0}}, 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFiniteEvaluation);
  }
  EXPECT_THROW((void)hr_gradient([](const QVector&) { return std::nan(""); }, QVector{kOne}), Error);
}

TEST(HRGradientTest, SquaredNormAtOnePlusI) {
  const Gradient g = hr_gradient(sq_norm_fn, QVector{{1, 1, 0, 0}});
  EXPECT_QUAT_NEAR(g[0], (Quaternion{0.5, -0.5, 0, 0}), 1e-9);
}

TEST(HRGradientTest, ConstantHasZeroGradients) {
  const RealFieldFn f = [](const QVector&) { return -3.0; };
  const QVector p{{0.3, -1, 2, 0.5}};
  for (auto kind : {GradientKind::HR, GradientKind::HRConjugate, GradientKind::IGradient}) {
    EXPECT_QUAT_NEAR(gradient(kind, f, p)[0], Quaternion{}, 1e-12);
  }
}

TEST(HRGradientTest, SquaredNormMatchesClosedForms) {
  Rng rng(20);
  for (int n = 0; n < 100; ++n) {
    const QVector q = random_vector(rng, 2);
    const Gradient hr = hr_gradient(sq_norm_fn, q);
    const Gradient hrc = hr_conjugate_gradient(sq_norm_fn, q);
    const Gradient ig = i_gradient(sq_norm_fn, q);
    for (std::size_t m = 0; m < q.size(); ++m) {
      const double tol = 1e-8 * (norm(q[m]) + 1.0);
      EXPECT_QUAT_NEAR(hr[m], 0.5 * conjugate(q[m]), tol);
      EXPECT_QUAT_NEAR(hrc[m], 0.5 * q[m], tol);
      // d(qq*)/dq* + (1/2) d(qq*)/dq_r = q/2 + q_r
      EXPECT_QUAT_NEAR(ig[m], 0.5 * q[m] + scalar_part(q[m]), tol);
    }
  }
}

TEST(HRGradientTest, AssemblyFromAnalyticPartials) {
  const QVector q{{1, 2, -1, 0.5}};
  const Partials p = sq_norm_partials(q);
  EXPECT_QUAT_NEAR(assemble(GradientKind::HR, p)[0], (Quaternion{1, -2, 1, -0.5} * 0.5), 1e-15);
  EXPECT_QUAT_NEAR(assemble(GradientKind::HRConjugate, p)[0], (Quaternion{1, 2, -1, 0.5} * 0.5), 1e-15);
  EXPECT_QUAT_NEAR(assemble(GradientKind::PartialReal, p)[0], (Quaternion{2, 0, 0, 0}), 1e-15);
  EXPECT_QUAT_NEAR(assemble(GradientKind::IGradient, p)[0], (Quaternion{1.5, 1, -0.5, 0.25}), 1e-15);
}

TEST(HRGradientTest, ConjugateGradientIsConjugateOfHR) {
  Rng rng(21);
  const RealFieldFn f = [](const QVector& q) {
    return q[0].r * q[1].i - 3 * q[0].j * q[0].j + std::sin(q[1].k) + q[0].i * q[1].r * q[1].j;
  };
  for (int n = 0; n < 20; ++n) {
    const QVector q = random_vector(rng, 2);
    const Partials p = fd_partials(f, q);
    EXPECT_LE(max_err(assemble(GradientKind::HRConjugate, p), conjugate(assemble(GradientKind::HR, p))), 1e-15);
  }
}

TEST(IGradientTest, SumFormEqualsConjugatePlusHalfReal) {
  Rng rng(22);
  const RealFieldFn f = [](const QVector& q) { return std::pow(squared_norm(q), 2) + q[0].r * q[1].k; };
  for (int n = 0; n < 50; ++n) {
    const QVector q = random_vector(rng, 2);
    const Partials p = fd_partials(f, q);
    EXPECT_LE(max_err(assemble_i_gradient_sum(p), assemble_i_gradient_identity(p)), 1e-10);
  }
}

TEST(IGradientTest, EqualsConjugateGradientWhenRealPartIsIrrelevant) {
  Rng rng(23);
  const RealFieldFn f = [](const QVector& q) { return q[0].i * q[0].i + q[0].j * q[0].k - 2 * q[0].k; };
  for (int n = 0; n < 20; ++n) {
    const QVector q{vector_part(random_quaternion(rng))};
    EXPECT_LE(max_err(i_gradient(f, q), hr_conjugate_gradient(f, q)), 1e-8);
  }
}

TEST(IGradientTest, InvolutionDerivativeIdentity) {
  // For real f, df/dq = (df/dq^eta)^eta.
  Rng rng(24);
  const RealFieldFn f = [](const QVector& q) { return q[0].r * q[0].i * q[0].j + std::exp(0.1 * q[0].k) + squared_norm(q); };
  for (int n = 0; n < 20; ++n) {
    const QVector q = random_vector(rng, 1);
    const Gradient g = hr_gradient(f, q);
    for (Axis a : {Axis::I, Axis::J, Axis::K}) {
      EXPECT_QUAT_NEAR(g[0], involution(involution_gradient(f, q, a)[0], a), 1e-6);
    }
  }
}

TEST(IGradientTest, ConjugateGradientIsSteepestDirection) {
  Rng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const QVector q = random_vector(rng, 2);
    const Partials p = fd_partials(sq_norm_fn, q);
    const Gradient dir = hr_conjugate_gradient(sq_norm_fn, q);
    const double dn = std::sqrt(squared_norm(dir));
    auto first_order = [&p](const QVector& d) {
      double acc = 0.0;
      for (std::size_t n = 0; n < d.size(); ++n) {
        acc += p.r[n] * d[n].r + p.i[n] * d[n].i + p.j[n] * d[n].j + p.k[n] * d[n].k;
      }
      return acc;
    };
    const double best = first_order(scale(dir, 1.0 / dn));
    for (int m = 0; m < 1000; ++m) {
      QVector d = random_vector(rng, 2);
      d = scale(d, 1.0 / std::sqrt(squared_norm(d)));
      EXPECT_LE(first_order(d), best + 1e-9);
    }
  }
}

TEST(ProductRuleTest, Examples) {
  const QuaternionFn id = [](const Quaternion& q) { return q; };
  const QuaternionFn conj = [](const Quaternion& q) { return conjugate(q); };
  const QuaternionFn constant = [](const Quaternion&) { return Quaternion{1, -2, 0.5, 3}; };
  Rng rng(26);
  for (int n = 0; n < 10; ++n) {
    const Quaternion q = random_quaternion(rng);
    EXPECT_LT(product_rule_check(id, id, q, 1e-5), 1e-6);
    EXPECT_LT(product_rule_check(id, conj, q, 1e-5), 1e-6);
    EXPECT_LT(product_rule_check(constant, id, q, 1e-5), 1e-9);
  }
}
