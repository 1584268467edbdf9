#include "qaf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "qaf/error.hpp"

namespace qaf::stats {
namespace {

constexpr std::array<Axis, 3> kAxes{Axis::I, Axis::J, Axis::K};
constexpr std::array<Quaternion, 4> kBasis{kOne, kI, kJ, kK};

std::size_t checked_dim(std::span<const QVector> samples) {
  if (samples.size() < 2) throw Error(ErrorKind::EmptyInput, "at least two samples are required");
  const std::size_t n = samples.front().size();
  if (n == 0) throw Error(ErrorKind::EmptyInput, "samples have zero length");
  for (std::size_t s = 1; s < samples.size(); ++s) {
    if (samples[s].size() != n) {
      throw Error(ErrorKind::RaggedInput, "sample " + std::to_string(s) + " has length " +
                                              std::to_string(samples[s].size()) + ", expected " + std::to_string(n));
    }
  }
  return n;
}

// x y^H accumulated into acc.
void accumulate_outer(QMatrix& acc, std::span<const Quaternion> x, std::span<const Quaternion> y) {
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t c = 0; c < y.size(); ++c) acc(r, c) += x[r] * conjugate(y[c]);
  }
}

void place(QMatrix& dst, const QMatrix& block, std::size_t br, std::size_t bc) {
  const std::size_t n = block.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) dst(br * n + r, bc * n + c) = block(r, c);
  }
}


// Component powers 1, (1-b), (1-b)^2, (1-b)^3 with r/i and j/k pairs correlated by 2b(1-b).
Eigen::Matrix4d mixing_matrix(double imbalance) {
  const double b = std::clamp(imbalance, 0.0, 1.0);
  const double rho = 2.0 * b * (1.0 - b);
  const double tail = std::sqrt(1.0 - rho * rho);
  Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
  k(0, 0) = 1.0;
  k(1, 0) = rho;
  k(1, 1) = tail;
  k(2, 2) = 1.0;
  k(3, 2) = rho;
  k(3, 3) = tail;
  Eigen::Vector4d amp;
  for (int c = 0; c < 4; ++c) amp(c) = std::sqrt(std::pow(1.0 - b, c));
  return amp.asDiagonal() * k;
}

double population_rs(const Eigen::Matrix4d& sigma) {
  double power = sigma.trace();
  double pseudo = 0.0;
  for (Axis axis : kAxes) {
    Quaternion m;
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        m += sigma(p, q) * (kBasis[static_cast<std::size_t>(p)] *
                            conjugate(involution(kBasis[static_cast<std::size_t>(q)], axis)));
      }
    }
    pseudo += norm(m);
  }
  return std::clamp(pseudo / (3.0 * power), 0.0, 1.0);
}

}  // namespace

AugmentedStats estimate_stats(std::span<const QVector> samples) {
  const std::size_t n = checked_dim(samples);
  AugmentedStats a{QMatrix(n, n), QMatrix(n, n), QMatrix(n, n), QMatrix(n, n), samples.size()};
  QVector xi(n), xj(n), xk(n);
  for (const QVector& x : samples) {
    for (std::size_t m = 0; m < n; ++m) {
      xi[m] = involution(x[m], Axis::I);
      xj[m] = involution(x[m], Axis::J);
      xk[m] = involution(x[m], Axis::K);
    }
    accumulate_outer(a.R, x, x);
    accumulate_outer(a.P, x, xi);
    accumulate_outer(a.S, x, xj);
    accumulate_outer(a.T, x, xk);
  }
  const double inv = 1.0 / static_cast<double>(samples.size());
  a.R *= inv;
  a.P *= inv;
  a.S *= inv;
  a.T *= inv;
  return a;
}

AugmentedStats estimate_stats(std::span<const Quaternion> stream) {
  std::vector<QVector> samples;
  samples.reserve(stream.size());
  for (const Quaternion& q : stream) samples.push_back({q});
  return estimate_stats(samples);
}

QMatrix augmented_covariance(const AugmentedStats& a) {
  const std::size_t n = a.dim();
  QMatrix out(4 * n, 4 * n);
  const QMatrix& R = a.R;
  const QMatrix& P = a.P;
  const QMatrix& S = a.S;
  const QMatrix& T = a.T;
  place(out, R, 0, 0);
  place(out, P, 0, 1);
  place(out, S, 0, 2);
  place(out, T, 0, 3);
  place(out, involution(P, Axis::I), 1, 0);
  place(out, involution(R, Axis::I), 1, 1);
  place(out, involution(T, Axis::I), 1, 2);
  place(out, involution(S, Axis::I), 1, 3);
  place(out, involution(S, Axis::J), 2, 0);
  place(out, involution(T, Axis::J), 2, 1);
  place(out, involution(R, Axis::J), 2, 2);
  place(out, involution(P, Axis::J), 2, 3);
  place(out, involution(T, Axis::K), 3, 0);
  place(out, involution(S, Axis::K), 3, 1);
  place(out, involution(P, Axis::K), 3, 2);
  place(out, involution(R, Axis::K), 3, 3);
  return out;
}

QVector augment(std::span<const Quaternion> x) {
  QVector out;
  out.reserve(4 * x.size());
  out.insert(out.end(), x.begin(), x.end());
  for (Axis axis : kAxes) {
    for (const Quaternion& q : x) out.push_back(involution(q, axis));
  }
  return out;
}

QVector cross_correlation(std::span<const QVector> x, std::span<const Quaternion> d) {
  if (x.size() != d.size()) {
    throw Error(ErrorKind::DimensionMismatch, "regressor and desired sequences differ in length");
  }
  const std::size_t n = checked_dim(x);
  QVector r(n);
  for (std::size_t s = 0; s < x.size(); ++s) {
    for (std::size_t m = 0; m < n; ++m) r[m] += d[s] * conjugate(x[s][m]);
  }
  return scale(r, 1.0 / static_cast<double>(x.size()));
}

CircularityReport circularity(const AugmentedStats& a) {
  CircularityReport rep;
  double power = 0.0;
  double pseudo = 0.0;
  for (std::size_t n = 0; n < a.dim(); ++n) {
    const double r = a.R(n, n).r;
    const double p = a.P(n, n).r;
    const double s = a.S(n, n).r;
    const double t = a.T(n, n).r;
    power += r;
    pseudo += norm(a.P(n, n)) + norm(a.S(n, n)) + norm(a.T(n, n));
    rep.component_powers[0] += 0.25 * (r + p + s + t);
    rep.component_powers[1] += 0.25 * (r + p - s - t);
    rep.component_powers[2] += 0.25 * (r - p + s - t);
    rep.component_powers[3] += 0.25 * (r - p - s + t);
  }
  if (!(power > 0.0)) throw Error(ErrorKind::ZeroPowerSignal, "signal has zero power");
  rep.r_s = std::clamp(pseudo / (3.0 * power), 0.0, 1.0);
  rep.p_norm = frobenius_norm(a.P);
  rep.s_norm = frobenius_norm(a.S);
  rep.t_norm = frobenius_norm(a.T);
  return rep;
}

CircularityReport circularity(std::span<const Quaternion> stream) { return circularity(estimate_stats(stream)); }

std::vector<Quaternion> quadruply_white_noise(std::size_t n, double variance, Rng& rng) {
  std::vector<Quaternion> out(n);
  for (auto& q : out) q = rng.gaussian_quaternion(variance);
  return out;
}

std::vector<Quaternion> quadruply_white_noise(std::size_t n, double variance, std::uint64_t seed) {
  Rng rng(seed);
  return quadruply_white_noise(n, variance, rng);
}

double circularity_identity_check(std::span<const QVector> samples) {
  const std::size_t n = checked_dim(samples);
  QMatrix R(n, n);
  QMatrix C(n, n);
  for (const QVector& x : samples) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        R(r, c) += x[r] * conjugate(x[c]);
        C(r, c) += x[r] * x[c];
      }
    }
  }
  const double rn = frobenius_norm(R);
  if (!(rn > 0.0)) throw Error(ErrorKind::ZeroPowerSignal, "signal has zero power");
  return frobenius_norm(C + R * 0.5) / rn;
}

double circularity_identity_check(std::span<const Quaternion> stream) {
  std::vector<QVector> samples;
  samples.reserve(stream.size());
  for (const Quaternion& q : stream) samples.push_back({q});
  return circularity_identity_check(samples);
}

double noncircular_population_rs(double imbalance) {
  const Eigen::Matrix4d m = mixing_matrix(imbalance);
  return population_rs(m * m.transpose());
}

NoncircularStream noncircular_generator(std::size_t n, double target_r_s, std::uint64_t seed) {
  if (!(target_r_s >= 0.0 && target_r_s < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "target r_s must lie in [0, 1)");
  }
  constexpr int kMaxIterations = 50;
  constexpr double kTolerance = 1e-6;
  double lo = 0.0;
  double hi = 1.0;
  double b = 0.0;
  double achieved = noncircular_population_rs(0.0);
  bool converged = std::abs(achieved - target_r_s) <= kTolerance;
  for (int it = 0; it < kMaxIterations && !converged; ++it) {
    b = 0.5 * (lo + hi);
    achieved = noncircular_population_rs(b);
    if (std::abs(achieved - target_r_s) <= kTolerance) {
      converged = true;
    } else if (achieved < target_r_s) {
      lo = b;
    } else {
      hi = b;
    }
  }
  if (!converged) {
    throw Error(ErrorKind::CalibrationFailed,
                "imbalance search stopped at r_s " + std::to_string(achieved) + " for target " +
                    std::to_string(target_r_s));
  }

  // Distinct latent memories make the widely linear predictor strictly better than the linear one.
  constexpr std::array<double, 4> kPhi{0.9, 0.5, -0.3, 0.7};
  // Unit total power, like the standardised benchmark signals.
  Eigen::Matrix4d m = mixing_matrix(b);
  m /= std::sqrt((m * m.transpose()).trace());
  Rng rng(seed);
  Eigen::Vector4d z;
  for (int c = 0; c < 4; ++c) z(c) = rng.gaussian();

  NoncircularStream out;
  out.samples.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (int c = 0; c < 4; ++c) {
      const double phi = kPhi[static_cast<std::size_t>(c)];
      z(c) = phi * z(c) + std::sqrt(1.0 - phi * phi) * rng.gaussian();
    }
    const Eigen::Vector4d x = m * z;
    out.samples[t] = from_real(x);
  }
  out.target_r_s = target_r_s;
  out.population_r_s = achieved;
  out.imbalance = b;
  out.achieved_r_s = n >= 2 ? circularity(std::span<const Quaternion>(out.samples)).r_s : achieved;
  return out;
}

}  // namespace qaf::stats
