#include "qaf/hr_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qaf/error.hpp"

namespace qaf::hr {
namespace {

double checked(const RealFieldFn& f, const QVector& x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteEvaluation, "cost function returned " + std::to_string(v));
  return v;
}

Quaternion checked(const QuaternionFn& f, const Quaternion& q) {
  const Quaternion v = f(q);
  if (!is_finite(v)) throw Error(ErrorKind::NonFiniteEvaluation, "quaternion function returned a non-finite value");
  return v;
}

double& slot(Quaternion& q, int c) {
  switch (c) {
    case 0: return q.r;
    case 1: return q.i;
    case 2: return q.j;
    default: return q.k;
  }
}

// Signs applied to (i d_i, j d_j, k d_k) for each assembly.
Gradient assemble_signed(const Partials& p, double si, double sj, double sk) {
  Gradient g(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    g[n] = Quaternion{p.r[n], si * p.i[n], sj * p.j[n], sk * p.k[n]} * 0.25;
  }
  return g;
}

}  // namespace

double default_step(const QVector& point) { return 1e-6 * std::max(1.0, std::sqrt(squared_norm(point))); }

Partials fd_partials(const RealFieldFn& f, const QVector& point, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  Partials p;
  p.r.resize(point.size());
  p.i.resize(point.size());
  p.j.resize(point.size());
  p.k.resize(point.size());
  std::vector<double>* out[4] = {&p.r, &p.i, &p.j, &p.k};
  QVector probe = point;
  for (std::size_t n = 0; n < point.size(); ++n) {
    for (int c = 0; c < 4; ++c) {
      const double base = slot(probe[n], c);
      slot(probe[n], c) = base + h;
      const double up = checked(f, probe);
      slot(probe[n], c) = base - h;
      const double down = checked(f, probe);
      slot(probe[n], c) = base;
      (*out[c])[n] = (up - down) / (2.0 * h);
    }
  }
  return p;
}

Partials fd_partials(const RealFieldFn& f, const QVector& point) { return fd_partials(f, point, default_step(point)); }

Gradient assemble_involution(Axis axis, const Partials& p) {
  switch (axis) {
    case Axis::I: return assemble_signed(p, -1, 1, 1);
    case Axis::J: return assemble_signed(p, 1, -1, 1);
    case Axis::K: return assemble_signed(p, 1, 1, -1);
  }
  return {};
}

Gradient assemble_i_gradient_sum(const Partials& p) {
  Gradient g = assemble_involution(Axis::I, p);
  const Gradient gj = assemble_involution(Axis::J, p);
  const Gradient gk = assemble_involution(Axis::K, p);
  for (std::size_t n = 0; n < g.size(); ++n) g[n] += gj[n] + gk[n];
  return g;
}

Gradient assemble_i_gradient_identity(const Partials& p) {
  Gradient g = assemble_signed(p, 1, 1, 1);
  for (std::size_t n = 0; n < g.size(); ++n) g[n].r += 0.5 * p.r[n];
  return g;
}

Gradient assemble(GradientKind kind, const Partials& p) {
  switch (kind) {
    case GradientKind::HR: return assemble_signed(p, -1, -1, -1);
    case GradientKind::HRConjugate: return assemble_signed(p, 1, 1, 1);
    case GradientKind::IGradient: return assemble_i_gradient_sum(p);
    case GradientKind::PartialReal: {
      Gradient g(p.size());
      for (std::size_t n = 0; n < p.size(); ++n) g[n] = {p.r[n], 0, 0, 0};
      return g;
    }
  }
  return {};
}

Gradient hr_gradient(const RealFieldFn& f, const QVector& point) {
  return assemble(GradientKind::HR, fd_partials(f, point));
}

Gradient hr_conjugate_gradient(const RealFieldFn& f, const QVector& point) {
  return assemble(GradientKind::HRConjugate, fd_partials(f, point));
}

Gradient involution_gradient(const RealFieldFn& f, const QVector& point, Axis axis) {
  return assemble_involution(axis, fd_partials(f, point));
}

Gradient i_gradient(const RealFieldFn& f, const QVector& point) {
  return assemble(GradientKind::IGradient, fd_partials(f, point));
}

Gradient gradient(GradientKind kind, const RealFieldFn& f, const QVector& point) {
  return assemble(kind, fd_partials(f, point));
}

double product_rule_check(const QuaternionFn& f, const QuaternionFn& g, const Quaternion& point, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  const Quaternion dq{h, 0, 0, 0};
  const Quaternion up = point + dq;
  const Quaternion down = point - dq;
  const Quaternion f0 = checked(f, point);
  const Quaternion g0 = checked(g, point);
  const Quaternion df = (checked(f, up) - checked(f, down)) * (0.5 / h);
  const Quaternion dg = (checked(g, up) - checked(g, down)) * (0.5 / h);
  const Quaternion dfg = (checked(f, up) * checked(g, up) - checked(f, down) * checked(g, down)) * (0.5 / h);
  return norm(dfg - f0 * dg - df * g0);
}

}  // namespace qaf::hr
