#include "swwlab/core.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "swwlab/errors.hpp"

namespace swwlab {

NoConvergence::NoConvergence(int iterations, double last_residual)
    : Error("no convergence after " + std::to_string(iterations) +
            " iterations (|F| = " + std::to_string(last_residual) + ")"),
      iterations_(iterations), last_residual_(last_residual) {}

void validate(const PhysParams& p) {
  if (!(p.g > 0.0) || !std::isfinite(p.g))
    throw DomainError("g must be positive");
  if (!(p.omega >= 0.0) || !std::isfinite(p.omega))
    throw DomainError("omega must be non-negative");
}

WaveVectorPair make_pair(const WaveVector& a, const WaveVector& b) {
  WaveVectorPair out;
  out.a = a;
  out.b = b;
  out.delta = a.lam1 * b.lam2 - a.lam2 * b.lam1;
  out.dot = a.lam1 * b.lam1 + a.lam2 * b.lam2;
  return out;
}

CoefficientMatrices build_coefficient_matrices(const State& s, const PhysParams& p) {
  const double u = s.u, v = s.v, h = s.h, g = p.g;
  CoefficientMatrices m;
  m.a1 << u, 0, g,
          0, u, 0,
          h, 0, u;
  m.a2 << v, 0, 0,
          0, v, g,
          0, h, v;
  m.A1 << 1, 0, 0,
          u, 0, g,
          v, 0, 0;
  m.A2 << 0, 1, 0,
          0, u, 0,
          0, v, g;
  m.A3 << 0, 0, 1,
          h, 0, u,
          0, h, v;
  return m;
}

double dispersion_det(const State& s, const PhysParams& p, const std::array<double, 3>& lam) {
  const auto m = build_coefficient_matrices(s, p);
  const Mat3 a = lam[0] * Mat3::Identity() + lam[1] * m.a1 + lam[2] * m.a2;
  return a.determinant();
}

double dispersion_factored(const State& s, const PhysParams& p, const std::array<double, 3>& lam) {
  const double w = lam[0] + lam[1] * s.u + lam[2] * s.v;
  // reduces to the textbook triple product when (lam1, lam2) is a unit vector
  const double c = std::sqrt(p.g * s.h) * std::hypot(lam[1], lam[2]);
  return w * (w + c) * (w - c);
}

WaveVector make_wave_vector(WaveKind kind, int eps, std::array<double, 2> dir, const State& s,
                            const PhysParams& p) {
  if (dir[0] == 0.0 && dir[1] == 0.0)
    throw ZeroDirection("wave direction must be nonzero");
  WaveVector w;
  w.kind = kind;
  w.eps = eps >= 0 ? 1 : -1;
  if (kind == WaveKind::S) {
    const double n = std::hypot(dir[0], dir[1]);
    dir[0] /= n;
    dir[1] /= n;
  }
  w.lam1 = dir[0];
  w.lam2 = dir[1];
  w.lam0 = -(w.lam1 * s.u + w.lam2 * s.v);
  if (kind == WaveKind::S)
    w.lam0 -= w.eps * std::sqrt(p.g * s.h);
  return w;
}

double riemann_invariant(const WaveVector& lam, const Point& pt) {
  return lam.lam0 * pt.t + lam.lam1 * pt.x + lam.lam2 * pt.y;
}

} // namespace swwlab
