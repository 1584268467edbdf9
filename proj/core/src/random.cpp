#include "qaf/random.hpp"

#include <cmath>

namespace qaf {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

Quaternion Rng::gaussian_quaternion(double variance) {
  const double s = std::sqrt(variance / 4.0);
  const double r = gaussian();
  const double i = gaussian();
  const double j = gaussian();
  const double k = gaussian();
  return Quaternion{r, i, j, k} * s;
}

Quaternion Rng::unit_quaternion() {
  for (;;) {
    const Quaternion q = gaussian_quaternion(4.0);
    const double n = norm(q);
    if (n > 1e-12) return q * (1.0 / n);
  }
}

}  // namespace qaf
