#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "swwlab/catalog.hpp"
#include "swwlab/rsww.hpp"

namespace swwlab {

using Field = std::function<State(const Point&)>;

enum class SystemKind { SWW, RSWW };

struct ResidualReport {
  std::array<double, 3> res{}; // x-momentum, y-momentum, mass
  double fd_step = 0.0;
  bool richardson = true;

  double max_abs() const;
};

// d(u, v, h)/d(t, x, y) by 4th-order central differences, optionally
// Richardson-combined over steps h and h/2. Rows u, v, h; columns t, x, y.
Mat3 spacetime_jacobian(const Field& field, const Point& pt, double step, bool richardson = true);

ResidualReport pde_residual(const Field& field, const Point& pt, const PhysParams& p,
                            SystemKind system, double step, bool richardson = true);

double trace_form_residual(const Field& field, const Point& pt, const PhysParams& p,
                           double step = 1e-3, bool richardson = true);

struct RankReport {
  int rank = 0;
  std::array<double, 2> singular_values{};
};

// rank of d(u, v, h)/d(x, y) at fixed t
RankReport jacobian_rank(const Field& field, const Point& pt, double rank_tol = 1e-7,
                         double step = 1e-4);

using LambdaRows = std::array<std::array<double, 3>, 2>;

struct SolutionAnsatz {
  int k = 1;
  std::function<State(const RVec&)> f;
  std::function<LambdaRows(const State&)> lambdas; // first k rows used
  double fd_step = 1e-5;
};

// k = 1: 3 entries; k = 2: 3 + 9 entries (mu-major, then a = 0..2)
std::vector<double> trace_condition_residual(const SolutionAnsatz& a, const RVec& rvals,
                                             const PhysParams& p);

using CSField = std::function<std::array<double, 3>(const State&)>;

struct DCReport {
  double annihilation = 0.0; // max_A |lambda^A . xi|
  double invariance = 0.0;   // max_alpha |xi^i d_i u^alpha|
};

DCReport dc_check(const SolutionAnsatz& a, const CSField& xi, const Field& field, const Point& pt,
                  double step = 1e-4);

struct GammaReport {
  double identity = 0.0;
  double g_consistency = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

// DomainSingular when a denominator is below 1e-12 in magnitude
GammaReport gamma_identity_residual(double psi);

std::optional<SolutionAnsatz> make_ansatz(const SolutionDescriptor& d);

// Residuals of the two-equation constraint system for the entropic-entropic
// example, evaluated on r by central differences.
std::array<double, 2> ee_constraint_residual(const SolutionDescriptor& d, const RVec& r,
                                             double step = 1e-5);

// Field evaluated by Newton from a fixed root (stencils of one branch).
Field anchored_field(const SolutionDescriptor& d, const RVec& anchor_root, double tol,
                     int max_iter = 50);
Field anchored_rsww_field(const SolutionDescriptor& d, double omega, const TimeShift& shift,
                          const RVec& anchor_root, double tol, int max_iter = 50);

struct SampleBox {
  double t_lo = -0.3, t_hi = 0.3;
  double x_lo = -1.0, x_hi = 1.0;
  double y_lo = -1.0, y_hi = 1.0;
};

SampleBox default_box(SystemKind system, double omega = 1.0);

struct SuiteOptions {
  SystemKind system = SystemKind::SWW;
  double omega = 1.0;
  std::optional<TimeShift> shift; // default pi / (2 omega)
  int samples = 50;
  double fd_step = 1e-3;
  double tol = 1e-6;
  double solve_tol = 1e-12;
  double min_sv = 1e-2; // skip points this close to a fold
  std::uint64_t seed = 20240611;
  int max_attempts = 0; // 0: 20 * samples
  SampleBox box;
};

struct SuiteResult {
  int accepted = 0;
  int attempted = 0;
  double max_residual = 0.0;
  Point worst{};
  std::vector<Point> points;
  std::vector<RVec> roots;
  std::vector<double> residuals;

  bool passed(double tol, int min_samples) const {
    return accepted >= min_samples && max_residual <= tol;
  }
};

SuiteResult residual_suite(const SolutionDescriptor& d, const SuiteOptions& opt);

// Same sampling, reporting the numerical rank at each accepted point.
struct RankSuiteResult {
  int accepted = 0;
  int min_rank = 3;
  int max_rank = 0;
  double max_ratio = 0.0; // max sigma2/sigma1
  double min_ratio = 1.0;
};

RankSuiteResult rank_suite(const SolutionDescriptor& d, const SuiteOptions& opt,
                           double rank_tol = 1e-7);

} // namespace swwlab
