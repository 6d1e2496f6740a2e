#pragma once

#include <array>

#include <Eigen/Core>

namespace swwlab {

struct PhysParams {
  double g = 1.0;
  double omega = 0.0;
};

// throws DomainError unless g > 0 and omega >= 0
void validate(const PhysParams& p);

struct Point {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct State {
  double u = 0.0;
  double v = 0.0;
  double h = 0.0;
};

enum class WaveKind { E, S };

struct WaveVector {
  double lam0 = 0.0;
  double lam1 = 0.0;
  double lam2 = 0.0;
  WaveKind kind = WaveKind::E;
  int eps = 1;
};

struct WaveVectorPair {
  WaveVector a;
  WaveVector b;
  double delta = 0.0; // a.lam1*b.lam2 - a.lam2*b.lam1
  double dot = 0.0;
};

WaveVectorPair make_pair(const WaveVector& a, const WaveVector& b);

using Mat3 = Eigen::Matrix3d;

struct CoefficientMatrices {
  Mat3 a1;
  Mat3 a2;
  Mat3 A1;
  Mat3 A2;
  Mat3 A3;
};

CoefficientMatrices build_coefficient_matrices(const State& s, const PhysParams& p);

// det(lam0 I + a1 lam1 + a2 lam2)
double dispersion_det(const State& s, const PhysParams& p, const std::array<double, 3>& lam);

// Product form of the same determinant, for h >= 0.
double dispersion_factored(const State& s, const PhysParams& p, const std::array<double, 3>& lam);

WaveVector make_wave_vector(WaveKind kind, int eps, std::array<double, 2> dir, const State& s,
                            const PhysParams& p);

double riemann_invariant(const WaveVector& lam, const Point& pt);

inline std::array<double, 3> as_array(const WaveVector& w) { return {w.lam0, w.lam1, w.lam2}; }

} // namespace swwlab
