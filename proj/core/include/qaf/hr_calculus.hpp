#pragma once

#include <functional>
#include <vector>

#include "qaf/qlinalg.hpp"

namespace qaf::hr {

// Real-valued cost J(q) of a quaternion vector.
using RealFieldFn = std::function<double(const QVector&)>;
using QuaternionFn = std::function<Quaternion(const Quaternion&)>;

enum class GradientKind { HR, HRConjugate, IGradient, PartialReal };

// Real partial derivatives per element and component.
struct Partials {
  std::vector<double> r, i, j, k;

  [[nodiscard]] std::size_t size() const noexcept { return r.size(); }
};

using Gradient = QVector;

// 1e-6 * max(1, |point|).
[[nodiscard]] double default_step(const QVector& point);

// Central differences. Throws NonFiniteEvaluation if f is not finite at any probe.
[[nodiscard]] Partials fd_partials(const RealFieldFn& f, const QVector& point, double h);
[[nodiscard]] Partials fd_partials(const RealFieldFn& f, const QVector& point);

// Assemblies from real partials with the imaginary units placed on the left:
//   df/dq   = (d_r - i d_i - j d_j - k d_k) / 4
//   df/dq*  = (d_r + i d_i + j d_j + k d_k) / 4
//   df/dq^eta flips the signs of the two components orthogonal to eta in df/dq.
[[nodiscard]] Gradient assemble(GradientKind kind, const Partials& p);
[[nodiscard]] Gradient assemble_involution(Axis axis, const Partials& p);
// Sum of the three involution derivatives.
[[nodiscard]] Gradient assemble_i_gradient_sum(const Partials& p);
// df/dq* + df/dq_r / 2.
[[nodiscard]] Gradient assemble_i_gradient_identity(const Partials& p);

[[nodiscard]] Gradient hr_gradient(const RealFieldFn& f, const QVector& point);
[[nodiscard]] Gradient hr_conjugate_gradient(const RealFieldFn& f, const QVector& point);
[[nodiscard]] Gradient involution_gradient(const RealFieldFn& f, const QVector& point, Axis axis);
[[nodiscard]] Gradient i_gradient(const RealFieldFn& f, const QVector& point);
[[nodiscard]] Gradient gradient(GradientKind kind, const RealFieldFn& f, const QVector& point);

// |D(fg) - f D(g) - D(f) g| with D the central difference quotient along the real axis.
[[nodiscard]] double product_rule_check(const QuaternionFn& f, const QuaternionFn& g, const Quaternion& point,
                                        double h = 1e-5);

}  // namespace qaf::hr
