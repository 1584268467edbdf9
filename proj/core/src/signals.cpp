#include "qaf/signals.hpp"

#include <cmath>

#include "qaf/error.hpp"
#include "qaf/random.hpp"

namespace qaf::bench {

std::vector<Quaternion> gen_ar4(std::size_t n, std::uint64_t seed, double noise_variance, std::size_t warmup) {
  Rng rng(seed);
  std::array<Quaternion, 4> past{};  // y(k-1) .. y(k-4)
  std::vector<Quaternion> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n + warmup; ++k) {
    Quaternion y = rng.gaussian_quaternion(noise_variance);
    for (std::size_t m = 0; m < 4; ++m) y += kAr4Coefficients[m] * past[m];
    past = {y, past[0], past[1], past[2]};
    if (k >= warmup) out.push_back(y);
  }
  return out;
}

MaTaps random_ma_taps(std::uint64_t seed) {
  Rng rng(seed);
  MaTaps taps;
  for (auto& t : taps) t = rng.unit_quaternion();
  return taps;
}

std::vector<Quaternion> gen_ma4(std::size_t n, std::uint64_t seed, const MaTaps& taps, double input_variance,
                                double noise_variance) {
  for (const auto& t : taps) {
    if (!is_finite(t)) throw Error(ErrorKind::InvalidArgument, "MA taps must be finite");
  }
  Rng rng(seed);
  // x(k) .. x(k-4); the lags before the first output are drawn too, so the stream is stationary from k = 0.
  std::array<Quaternion, 5> x{};
  for (std::size_t m = 1; m < 5; ++m) x[m] = rng.gaussian_quaternion(input_variance);
  std::vector<Quaternion> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    x = {rng.gaussian_quaternion(input_variance), x[0], x[1], x[2], x[3]};
    Quaternion y = rng.gaussian_quaternion(noise_variance);
    for (std::size_t m = 0; m < 5; ++m) y += taps[m] * x[m];
    out[k] = y;
  }
  return out;
}

std::vector<Quaternion> lorenz_trajectory(std::size_t n, double dt, std::uint64_t seed, const LorenzParams& p) {
  if (!(dt > 0.0 && dt <= 0.05)) throw Error(ErrorKind::InvalidArgument, "Lorenz dt must lie in (0, 0.05]");
  struct State {
    double x, y, z;
  };
  auto deriv = [&p](const State& s) {
    return State{p.sigma * (s.y - s.x), s.x * (p.rho - s.z) - s.y, s.x * s.y - p.beta * s.z};
  };
  auto axpy = [](const State& s, double h, const State& d) { return State{s.x + h * d.x, s.y + h * d.y, s.z + h * d.z}; };

  Rng rng(seed);
  State s{1.0 + 0.1 * rng.gaussian(), 1.0 + 0.1 * rng.gaussian(), 1.0 + 0.1 * rng.gaussian()};
  std::vector<Quaternion> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n + p.burn_in; ++k) {
    const State k1 = deriv(s);
    const State k2 = deriv(axpy(s, 0.5 * dt, k1));
    const State k3 = deriv(axpy(s, 0.5 * dt, k2));
    const State k4 = deriv(axpy(s, dt, k3));
    s = State{s.x + dt / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
              s.y + dt / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
              s.z + dt / 6.0 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z)};
    if (k >= p.burn_in) out.push_back({0.0, s.x, s.y, s.z});
  }
  return out;
}

std::vector<Quaternion> gen_lorenz(std::size_t n, double dt, std::uint64_t seed, const LorenzParams& params) {
  std::vector<Quaternion> out = lorenz_trajectory(n, dt, seed, params);
  if (out.empty()) return out;
  double mean[3] = {0, 0, 0};
  for (const auto& q : out) {
    mean[0] += q.i;
    mean[1] += q.j;
    mean[2] += q.k;
  }
  for (double& m : mean) m /= static_cast<double>(out.size());
  double power[3] = {0, 0, 0};
  for (const auto& q : out) {
    power[0] += (q.i - mean[0]) * (q.i - mean[0]);
    power[1] += (q.j - mean[1]) * (q.j - mean[1]);
    power[2] += (q.k - mean[2]) * (q.k - mean[2]);
  }
  double gain[3];
  for (int c = 0; c < 3; ++c) {
    const double var = power[c] / static_cast<double>(out.size());
    gain[c] = var > 0.0 ? 1.0 / std::sqrt(var) : 0.0;
  }
  for (auto& q : out) {
    q = {0.0, (q.i - mean[0]) * gain[0], (q.j - mean[1]) * gain[1], (q.k - mean[2]) * gain[2]};
  }
  return out;
}

}  // namespace qaf::bench
