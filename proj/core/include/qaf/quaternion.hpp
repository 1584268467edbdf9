#pragma once

#include <cmath>
#include <iosfwd>

namespace qaf {

enum class Axis { I, J, K };
enum class Part { R, I, J, K };

// q = r + i*qi + j*qj + k*qk with ij = k, jk = i, ki = j.
struct Quaternion {
  double r = 0.0;
  double i = 0.0;
  double j = 0.0;
  double k = 0.0;

  constexpr Quaternion& operator+=(const Quaternion& o) noexcept {
    r += o.r; i += o.i; j += o.j; k += o.k;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) noexcept {
    r -= o.r; i -= o.i; j -= o.j; k -= o.k;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) noexcept {
    r *= s; i *= s; j *= s; k *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline constexpr Quaternion kOne{1, 0, 0, 0};
inline constexpr Quaternion kI{0, 1, 0, 0};
inline constexpr Quaternion kJ{0, 0, 1, 0};
inline constexpr Quaternion kK{0, 0, 0, 1};

[[nodiscard]] constexpr Quaternion operator+(Quaternion a, const Quaternion& b) noexcept { return a += b; }
[[nodiscard]] constexpr Quaternion operator-(Quaternion a, const Quaternion& b) noexcept { return a -= b; }
[[nodiscard]] constexpr Quaternion operator-(const Quaternion& a) noexcept { return {-a.r, -a.i, -a.j, -a.k}; }
[[nodiscard]] constexpr Quaternion operator*(Quaternion a, double s) noexcept { return a *= s; }
[[nodiscard]] constexpr Quaternion operator*(double s, Quaternion a) noexcept { return a *= s; }

// Hamilton product.
[[nodiscard]] constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) noexcept {
  return {a.r * b.r - a.i * b.i - a.j * b.j - a.k * b.k,
          a.r * b.i + a.i * b.r + a.j * b.k - a.k * b.j,
          a.r * b.j - a.i * b.k + a.j * b.r + a.k * b.i,
          a.r * b.k + a.i * b.j - a.j * b.i + a.k * b.r};
}

[[nodiscard]] constexpr Quaternion mul(const Quaternion& a, const Quaternion& b) noexcept { return a * b; }

[[nodiscard]] constexpr Quaternion conjugate(const Quaternion& q) noexcept { return {q.r, -q.i, -q.j, -q.k}; }

// -eta * q * eta: keeps the scalar part and the eta component, negates the other two.
[[nodiscard]] constexpr Quaternion involution(const Quaternion& q, Axis axis) noexcept {
  switch (axis) {
    case Axis::I: return {q.r, q.i, -q.j, -q.k};
    case Axis::J: return {q.r, -q.i, q.j, -q.k};
    case Axis::K: return {q.r, -q.i, -q.j, q.k};
  }
  return q;
}

[[nodiscard]] constexpr Quaternion unit(Axis axis) noexcept {
  switch (axis) {
    case Axis::I: return kI;
    case Axis::J: return kJ;
    case Axis::K: return kK;
  }
  return kOne;
}

[[nodiscard]] constexpr double norm2(const Quaternion& q) noexcept {
  return q.r * q.r + q.i * q.i + q.j * q.j + q.k * q.k;
}
[[nodiscard]] inline double norm(const Quaternion& q) noexcept { return std::sqrt(norm2(q)); }

// Two-sided inverse conj(q)/|q|^2. Undefined for q == 0.
[[nodiscard]] constexpr Quaternion inverse(const Quaternion& q) noexcept { return conjugate(q) * (1.0 / norm2(q)); }

[[nodiscard]] constexpr Quaternion scalar_part(const Quaternion& q) noexcept { return {q.r, 0, 0, 0}; }
[[nodiscard]] constexpr Quaternion vector_part(const Quaternion& q) noexcept { return {0, q.i, q.j, q.k}; }
[[nodiscard]] constexpr bool is_finite(const Quaternion& q) noexcept {
  return std::isfinite(q.r) && std::isfinite(q.i) && std::isfinite(q.j) && std::isfinite(q.k);
}

// Extracts a real component using only involutions and products:
// q_r = (q + q^i + q^j + q^k)/4, q_i = (q + q^i - q^j - q^k)/(4i), etc.
[[nodiscard]] double component(const Quaternion& q, Part part) noexcept;

// Field read, for comparison against component().
[[nodiscard]] constexpr double field(const Quaternion& q, Part part) noexcept {
  switch (part) {
    case Part::R: return q.r;
    case Part::I: return q.i;
    case Part::J: return q.j;
    case Part::K: return q.k;
  }
  return 0.0;
}

inline constexpr double kRotorTolerance = 1e-12;

// rotor * point * conj(rotor). Throws NonUnitRotor unless | |rotor| - 1 | <= 1e-12.
[[nodiscard]] Quaternion rotate(const Quaternion& point, const Quaternion& rotor);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qaf
