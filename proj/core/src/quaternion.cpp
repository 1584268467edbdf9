#include "qaf/quaternion.hpp"

#include <ostream>
#include <sstream>

#include "qaf/error.hpp"

namespace qaf {

double component(const Quaternion& q, Part part) noexcept {
  const Quaternion qi = involution(q, Axis::I);
  const Quaternion qj = involution(q, Axis::J);
  const Quaternion qk = involution(q, Axis::K);
  // 1/eta = -eta for the imaginary units.
  switch (part) {
    case Part::R: return (0.25 * (q + qi + qj + qk)).r;
    case Part::I: return (-0.25 * kI * (q + qi - qj - qk)).r;
    case Part::J: return (-0.25 * kJ * (q - qi + qj - qk)).r;
    case Part::K: return (-0.25 * kK * (q - qi - qj + qk)).r;
  }
  return 0.0;
}

Quaternion rotate(const Quaternion& point, const Quaternion& rotor) {
  const double n = norm(rotor);
  if (!(std::abs(n - 1.0) <= kRotorTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "rotor norm " << n << " is not unit";
    throw Error(ErrorKind::NonUnitRotor, msg.str());
  }
  return rotor * point * conjugate(rotor);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.r << ", " << q.i << ", " << q.j << ", " << q.k << ')';
}

}  // namespace qaf
