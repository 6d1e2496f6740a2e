#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "swwlab/core.hpp"

namespace swwlab {

using RVec = std::array<double, 2>;
using RJac = std::array<RVec, 2>; // RJac[i][j] = dF_i / dr_j

struct ImplicitSystem {
  int dim = 1;
  std::function<RVec(const RVec&, const Point&)> residual;
  std::function<RJac(const RVec&, const Point&)> jacobian; // empty: finite differences
};

enum class SolveStatus { Converged, NoConvergence, SingularJacobian, NonFinite, Skipped };

struct SolveReport {
  RVec root{};
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;   // max-norm of F(root)
  double jac_min_sv = 0.0; // smallest singular value of dF/dr at root
  double jac_det = 0.0;
  bool catastrophe = false;
  SolveStatus status = SolveStatus::NoConvergence;
};

struct SolveOptions {
  double bracket_radius = 4.0;
  int bracket_samples = 64;
  bool polish = true;
};

double max_norm(const RVec& f, int dim);

RJac evaluate_jacobian(const ImplicitSystem& sys, const RVec& r, const Point& pt);

// smallest singular value and determinant of the leading dim x dim block
void jacobian_summary(const RJac& j, int dim, double& min_sv, double& det);

// Damped Newton with a scalar bisection fallback. Never throws for numerical
// failure; the report carries the status. Exceptions thrown by the residual
// (e.g. DomainError) propagate.
SolveReport solve(const ImplicitSystem& sys, const Point& pt, const RVec& seed, double tol,
                  int max_iter, const SolveOptions& opt = {});

// As solve(), but throws NoConvergence or SingularJacobian on failure.
SolveReport solve_newton(const ImplicitSystem& sys, const Point& pt, const RVec& seed, double tol,
                         int max_iter, const SolveOptions& opt = {});

struct ContinuationOptions {
  double max_step = 0.1; // max-norm length of one step in (t, x, y)
  int max_halvings = 12;
};

// Follows the root from (from, r_from) to `to` along the straight segment.
SolveReport continue_root(const ImplicitSystem& sys, const Point& from, const RVec& r_from,
                          const Point& to, double tol, int max_iter,
                          const ContinuationOptions& copt = {}, const SolveOptions& opt = {});

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  double at(int i) const { return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

struct Grid {
  Axis t;
  Axis x;
  Axis y;

  std::size_t size() const {
    return static_cast<std::size_t>(t.n) * static_cast<std::size_t>(x.n) *
           static_cast<std::size_t>(y.n);
  }
  std::size_t index(int it, int ix, int iy) const {
    return (static_cast<std::size_t>(it) * x.n + ix) * y.n + iy;
  }
  Point point(int it, int ix, int iy) const { return {t.at(it), x.at(ix), y.at(iy)}; }
  Point point(std::size_t idx) const;
};

void validate(const Grid& g);

struct SweepOptions {
  int coarse_stride = 8;
  double catastrophe_tol = 1e-8;
  int max_iter = 50;
  Point seed_point{};
  RVec seed_root{};
  int threads = 0; // 0: SWWLAB_THREADS, then hardware concurrency
  ContinuationOptions continuation{};
};

// Two-pass continuation over the grid; per-cell failures are recorded.
std::vector<SolveReport> sweep_grid(const ImplicitSystem& sys, const Grid& grid, double tol,
                                    const SweepOptions& opt = {});

// Applies the catastrophe rule to a report given the branch's reference
// determinant sign.
void flag_catastrophe(SolveReport& rep, double reference_det, double catastrophe_tol);

int resolve_threads(int requested);

} // namespace swwlab
