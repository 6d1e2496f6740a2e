#include "swwlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "swwlab/errors.hpp"

namespace swwlab {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

using Vec3 = Eigen::Vector3d;

Vec3 as_vec(const State& s) { return {s.u, s.v, s.h}; }

State probe(const Field& field, const Point& q) {
  State s;
  try {
    s = field(q);
  } catch (const StencilFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw StencilFailure(std::string("stencil point failed: ") + e.what());
  }
  if (!std::isfinite(s.u) || !std::isfinite(s.v) || !std::isfinite(s.h))
    throw StencilFailure("stencil point is not finite");
  return s;
}

Point shifted(const Point& p, int axis, double d) {
  Point q = p;
  (axis == 0 ? q.t : axis == 1 ? q.x : q.y) += d;
  return q;
}

// 4th-order central difference of the field along one axis
Vec3 d4(const Field& field, const Point& pt, int axis, double h) {
  const Vec3 p2 = as_vec(probe(field, shifted(pt, axis, 2 * h)));
  const Vec3 p1 = as_vec(probe(field, shifted(pt, axis, h)));
  const Vec3 m1 = as_vec(probe(field, shifted(pt, axis, -h)));
  const Vec3 m2 = as_vec(probe(field, shifted(pt, axis, -2 * h)));
  return ((m2 - p2) + 8.0 * (p1 - m1)) / (12.0 * h);
}

// 4th-order central difference of a vector function of a vector argument
template <class Fn>
Eigen::VectorXd dvec(const Fn& fn, Eigen::VectorXd x, int i, double h) {
  const double xi = x[i];
  x[i] = xi + 2 * h;
  const Eigen::VectorXd p2 = fn(x);
  x[i] = xi + h;
  const Eigen::VectorXd p1 = fn(x);
  x[i] = xi - h;
  const Eigen::VectorXd m1 = fn(x);
  x[i] = xi - 2 * h;
  const Eigen::VectorXd m2 = fn(x);
  return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
}

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double lerp(double lo, double hi, double s) { return lo + (hi - lo) * s; }

} // namespace

double ResidualReport::max_abs() const {
  return std::max({std::abs(res[0]), std::abs(res[1]), std::abs(res[2])});
}

Mat3 spacetime_jacobian(const Field& field, const Point& pt, double step, bool richardson) {
  Mat3 du;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 d = d4(field, pt, axis, step);
    if (richardson) {
      const Vec3 half = d4(field, pt, axis, 0.5 * step);
      d = (16.0 * half - d) / 15.0;
    }
    du.col(axis) = d;
  }
  return du;
}

ResidualReport pde_residual(const Field& field, const Point& pt, const PhysParams& p,
                            SystemKind system, double step, bool richardson) {
  const State s = probe(field, pt);
  const Mat3 du = spacetime_jacobian(field, pt, step, richardson);
  const double om = system == SystemKind::RSWW ? p.omega : 0.0;
  const double g = p.g;
  // du(row, col): rows u, v, h; cols t, x, y
  ResidualReport r;
  r.fd_step = step;
  r.richardson = richardson;
  r.res[0] = du(0, 0) + s.u * du(0, 1) + s.v * du(0, 2) + g * du(2, 1) - 2.0 * om * s.v;
  r.res[1] = du(1, 0) + s.u * du(1, 1) + s.v * du(1, 2) + g * du(2, 2) + 2.0 * om * s.u;
  r.res[2] = du(2, 0) + s.u * du(2, 1) + s.v * du(2, 2) + s.h * (du(0, 1) + du(1, 2));
  return r;
}

double trace_form_residual(const Field& field, const Point& pt, const PhysParams& p, double step,
                           bool richardson) {
  const State s = probe(field, pt);
  const Mat3 du = spacetime_jacobian(field, pt, step, richardson);
  const auto m = build_coefficient_matrices(s, p);
  double worst = 0.0;
  for (const Mat3* A : {&m.A1, &m.A2, &m.A3})
    worst = std::max(worst, std::abs((*A * du).trace()));
  return worst;
}

RankReport jacobian_rank(const Field& field, const Point& pt, double rank_tol, double step) {
  Eigen::Matrix<double, 3, 2> J;
  J.col(0) = d4(field, pt, 1, step);
  J.col(1) = d4(field, pt, 2, step);
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(J);
  const auto sv = svd.singularValues();
  RankReport r;
  r.singular_values = {sv[0], sv[1]};
  if (sv[0] < 1e-12)
    return r;
  r.rank = 1 + (sv[1] / sv[0] > rank_tol ? 1 : 0);
  return r;
}

std::vector<double> trace_condition_residual(const SolutionAnsatz& a, const RVec& rvals,
                                             const PhysParams& p) {
  const int k = a.k;
  const double h = a.fd_step;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out(k == 1 ? 3 : 12, nan);
  try {
    const auto fvec = [&](const Eigen::VectorXd& r) {
      const State s = a.f({r[0], k > 1 ? r[1] : 0.0});
      Eigen::VectorXd v(3);
      v << s.u, s.v, s.h;
      return v;
    };
    const auto lamvec = [&](int comp) {
      return [&, comp](const Eigen::VectorXd& U) {
        const LambdaRows L = a.lambdas({U[0], U[1], U[2]});
        Eigen::VectorXd v(k);
        for (int A = 0; A < k; ++A)
          v[A] = L[A][comp];
        return v;
      };
    };
    Eigen::VectorXd r(k);
    r[0] = rvals[0];
    if (k > 1)
      r[1] = rvals[1];
    const State s = a.f({r[0], k > 1 ? r[1] : 0.0});
    Eigen::VectorXd U(3);
    U << s.u, s.v, s.h;

    Eigen::MatrixXd fr(3, k);
    for (int A = 0; A < k; ++A)
      fr.col(A) = dvec(fvec, r, A, h);
    const LambdaRows L = a.lambdas(s);
    Eigen::MatrixXd lam(k, 3);
    for (int A = 0; A < k; ++A)
      for (int i = 0; i < 3; ++i)
        lam(A, i) = L[A][i];
    const auto m = build_coefficient_matrices(s, p);
    const Mat3* As[3] = {&m.A1, &m.A2, &m.A3};
    for (int mu = 0; mu < 3; ++mu)
      out[mu] = (*As[mu] * fr * lam).trace();
    if (k == 2) {
      for (int comp = 0; comp < 3; ++comp) {
        Eigen::MatrixXd eta(k, 3);
        const auto lv = lamvec(comp);
        for (int al = 0; al < 3; ++al)
          eta.col(al) = dvec(lv, U, al, h * std::max(1.0, std::abs(U[al])));
        for (int mu = 0; mu < 3; ++mu)
          out[3 + 3 * mu + comp] = (*As[mu] * fr * eta * fr * lam).trace();
      }
    }
  } catch (const std::exception&) {
    std::fill(out.begin(), out.end(), nan);
  }
  return out;
}

DCReport dc_check(const SolutionAnsatz& a, const CSField& xi, const Field& field, const Point& pt,
                  double step) {
  const State s = probe(field, pt);
  const auto x = xi(s);
  const LambdaRows L = a.lambdas(s);
  DCReport r;
  for (int A = 0; A < a.k; ++A)
    r.annihilation =
        std::max(r.annihilation, std::abs(L[A][0] * x[0] + L[A][1] * x[1] + L[A][2] * x[2]));
  const Mat3 du = spacetime_jacobian(field, pt, step, false);
  const Vec3 flow = du * Vec3(x[0], x[1], x[2]);
  r.invariance = flow.cwiseAbs().maxCoeff();
  return r;
}

GammaReport gamma_identity_residual(double psi) {
  const double P = psi;
  const double q = std::sqrt(1.0 + P * P);
  const double den1 = kSqrt3 * P * P - 2.0 * P - kSqrt3;
  const double num1 = kSqrt3 * P * P * P - 5.0 * P * P + kSqrt3 * P + 3.0;
  const double num2 = 3.0 * P * P * P * P - 4.0 * kSqrt3 * P * P * P - 2.0 * P * P +
                      4.0 * kSqrt3 * P + 3.0;
  const double lin = 1.0 + kSqrt3 * P;
  if (std::abs(den1) < 1e-12 || std::abs(num1) < 1e-12 || std::abs(lin) < 1e-12)
    throw DomainSingular("gamma identity singular at psi = " + std::to_string(psi));
  GammaReport r;
  r.gamma1 = 2.0 * num1 / (den1 * q);
  r.gamma2 = 2.0 * num2 / (num1 * q);
  r.identity = r.gamma1 * den1 + r.gamma2 * (P * P - 2.0 * kSqrt3 * P + 3.0) +
               r.gamma1 * r.gamma2 * q * (kSqrt3 - P);
  r.g_consistency = (P - kSqrt3) * r.gamma2 / (lin * r.gamma1) - 1.0;
  return r;
}

std::optional<SolutionAnsatz> make_ansatz(const SolutionDescriptor& d) {
  SolutionAnsatz a;
  a.k = d.rank();
  const double g = d.params.g;
  const auto e_type = [](double l1, double l2, const State& s) {
    return std::array<double, 3>{-(l1 * s.u + l2 * s.v), l1, l2};
  };
  const auto s_type = [g](double l1, double l2, int eps, const State& s) {
    return std::array<double, 3>{-(l1 * s.u + l2 * s.v + eps * std::sqrt(g * s.h)), l1, l2};
  };
  switch (d.family) {
  case Family::E_GENERIC:
  case Family::E_PERIODIC:
  case Family::E_HYPERBOLIC:
  case Family::S_SIMPLE:
  case Family::S_ROTATING:
  case Family::S_FRESNEL:
    a.f = [d](const RVec& r) { return d.state({r[0], 0.0}); };
    break;
  default:
    break;
  }
  switch (d.family) {
  case Family::E_GENERIC:
    a.lambdas = [d, e_type](const State& s) {
      return LambdaRows{e_type(d.c.dir1[0], d.c.dir1[1], s), {}};
    };
    return a;
  case Family::E_PERIODIC:
    a.lambdas = [e_type](const State& s) { return LambdaRows{e_type(s.u, s.v, s), {}}; };
    return a;
  case Family::E_HYPERBOLIC:
    a.lambdas = [e_type](const State& s) { return LambdaRows{e_type(s.v, s.u, s), {}}; };
    return a;
  case Family::S_SIMPLE:
    a.lambdas = [d, s_type](const State& s) {
      const double n = std::hypot(d.c.dir1[0], d.c.dir1[1]);
      return LambdaRows{s_type(d.c.dir1[0] / n, d.c.dir1[1] / n, 1, s), {}};
    };
    return a;
  case Family::S_ROTATING:
    a.lambdas = [d, s_type](const State& s) {
      const double phi = std::sqrt(s.h) - d.c.h0;
      return LambdaRows{s_type(std::sin(phi), std::cos(phi), 1, s), {}};
    };
    return a;
  case Family::S_FRESNEL:
    a.lambdas = [d, s_type](const State& s) {
      const double phi = std::pow(std::sqrt(s.h) - d.c.h0, 2);
      return LambdaRows{s_type(std::sin(phi), std::cos(phi), 1, s), {}};
    };
    return a;
  case Family::ES_RANK2: {
    a.f = [d](const RVec& r) {
      // s = r2 - sqrt3 eps / (2 lam21(G(s))) r1
      ImplicitSystem sys;
      sys.dim = 1;
      sys.residual = [&d, r](const RVec& z, const Point&) {
        const double L = d.p.lam21 ? (*d.p.lam21)((*d.p.G)(z[0])) : 1.0;
        return RVec{z[0] - (r[1] - kSqrt3 * d.c.eps / (2.0 * L) * r[0]), 0.0};
      };
      const SolveReport rep = solve_newton(sys, {}, {r[1], 0.0}, 1e-14, 50);
      return d.state({r[1], rep.root[0]});
    };
    a.lambdas = [d, g](const State& s) {
      const double L = d.p.lam21 ? (*d.p.lam21)(s.v) : 1.0;
      const double e = d.c.eps;
      return LambdaRows{std::array<double, 3>{L * (kSqrt3 * e * s.u + s.v), -kSqrt3 * e * L, -L},
                        std::array<double, 3>{s.u + std::sqrt(g * s.h), -1.0, 0.0}};
    };
    return a;
  }
  case Family::SS_RANK2:
  case Family::SS_MIXED: {
    std::array<double, 2> l1 = d.c.dir1, l2 = d.c.dir2;
    int eps = d.c.eps;
    if (d.family == Family::SS_MIXED) {
      l1 = {std::sin(d.c.phi1), std::cos(d.c.phi1)};
      l2 = {std::sin(d.c.phi2), std::cos(d.c.phi2)};
      eps = -1;
    }
    a.f = [d](const RVec& r) { return d.state(r); };
    a.lambdas = [l1, l2, eps, s_type](const State& s) {
      return LambdaRows{s_type(l1[0], l1[1], 1, s), s_type(l2[0], l2[1], eps, s)};
    };
    return a;
  }
  case Family::EE_DEGENERATE:
  case Family::SS_BRANCH_A:
    break;
  }
  return std::nullopt;
}

std::array<double, 2> ee_constraint_residual(const SolutionDescriptor& d, const RVec& r,
                                             double step) {
  const auto fvec = [&](const Eigen::VectorXd& x) {
    const State s = d.state({x[0], x[1]});
    Eigen::VectorXd v(3);
    v << s.u, s.v, s.h;
    return v;
  };
  Eigen::VectorXd x(2);
  x << r[0], r[1];
  const Eigen::VectorXd d1 = dvec(fvec, x, 0, step), d2 = dvec(fvec, x, 1, step);
  const State s = d.state(r);
  const double u_r1 = d1[0], v_r1 = d1[1], u_r2 = d2[0], v_r2 = d2[1];
  return {s.u * v_r2 + s.v * u_r1, s.u * v_r2 * v_r2 + s.v * u_r2 * v_r1};
}

Field anchored_field(const SolutionDescriptor& d, const RVec& anchor_root, double tol,
                     int max_iter) {
  return [d, sys = d.system(), anchor_root, tol, max_iter](const Point& q) {
    const SolveReport rep = solve(sys, q, anchor_root, tol, max_iter);
    if (!rep.converged)
      throw StencilFailure("stencil solve did not converge");
    return d.state(rep.root);
  };
}

Field anchored_rsww_field(const SolutionDescriptor& d, double omega, const TimeShift& shift,
                          const RVec& anchor_root, double tol, int max_iter) {
  return [d, sys = rsww_system(d, omega, shift), omega, shift, anchor_root, tol,
          max_iter](const Point& q) {
    const SolveReport rep = solve(sys, q, anchor_root, tol, max_iter);
    if (!rep.converged)
      throw StencilFailure("stencil solve did not converge");
    return lift_state({q.t + shift.t0, q.x, q.y}, d.state(rep.root), omega);
  };
}

SampleBox default_box(SystemKind system, double omega) {
  SampleBox b;
  if (system == SystemKind::RSWW) {
    const double half = std::numbers::pi / (2.0 * omega);
    b.t_lo = -half + 0.1;
    b.t_hi = half - 0.1;
  }
  return b;
}

namespace {

template <class Visit>
void sample_points(const SolutionDescriptor& d, const SuiteOptions& opt, int want, Visit&& visit) {
  std::mt19937_64 rng(opt.seed);
  const int max_attempts = opt.max_attempts > 0 ? opt.max_attempts : 20 * std::max(1, want);
  const TimeShift shift =
      opt.shift ? *opt.shift
                : (opt.system == SystemKind::RSWW ? TimeShift::standard(opt.omega) : TimeShift{});
  EvalOptions eopt;
  eopt.tol = opt.solve_tol;
  const double inner = std::max(std::pow(opt.fd_step, 4) * 1e-2, 1e-14);
  int accepted = 0;
  for (int attempt = 0; attempt < max_attempts && accepted < want; ++attempt) {
    const Point pt{lerp(opt.box.t_lo, opt.box.t_hi, u01(rng)),
                   lerp(opt.box.x_lo, opt.box.x_hi, u01(rng)),
                   lerp(opt.box.y_lo, opt.box.y_hi, u01(rng))};
    Evaluation ev;
    try {
      ev = opt.system == SystemKind::SWW ? eval_sww(d, pt, eopt)
                                         : eval_rsww(d, pt, opt.omega, shift, eopt);
    } catch (const std::exception&) {
      continue;
    }
    if (!ev.report.converged || ev.report.catastrophe || ev.report.jac_min_sv < opt.min_sv)
      continue;
    const Field field = opt.system == SystemKind::SWW
                            ? anchored_field(d, ev.report.root, inner)
                            : anchored_rsww_field(d, opt.omega, shift, ev.report.root, inner);
    try {
      if (visit(pt, ev, field))
        ++accepted;
    } catch (const StencilFailure&) {
    }
  }
}

} // namespace

SuiteResult residual_suite(const SolutionDescriptor& d, const SuiteOptions& opt) {
  SuiteResult out;
  PhysParams p = d.params;
  if (opt.system == SystemKind::RSWW)
    p.omega = opt.omega;
  int attempts = 0;
  sample_points(d, opt, opt.samples, [&](const Point& pt, const Evaluation& ev, const Field& f) {
    ++attempts;
    const ResidualReport r = pde_residual(f, pt, p, opt.system, opt.fd_step, true);
    const double m = r.max_abs();
    if (!std::isfinite(m))
      return false;
    out.points.push_back(pt);
    out.roots.push_back(ev.report.root);
    out.residuals.push_back(m);
    if (m >= out.max_residual) {
      out.max_residual = m;
      out.worst = pt;
    }
    ++out.accepted;
    return true;
  });
  out.attempted = attempts;
  return out;
}

RankSuiteResult rank_suite(const SolutionDescriptor& d, const SuiteOptions& opt, double rank_tol) {
  RankSuiteResult out;
  sample_points(d, opt, opt.samples, [&](const Point& pt, const Evaluation&, const Field& f) {
    const RankReport r = jacobian_rank(f, pt, rank_tol);
    const double ratio = r.singular_values[0] > 0 ? r.singular_values[1] / r.singular_values[0] : 0;
    out.min_rank = std::min(out.min_rank, r.rank);
    out.max_rank = std::max(out.max_rank, r.rank);
    out.max_ratio = std::max(out.max_ratio, ratio);
    out.min_ratio = std::min(out.min_ratio, ratio);
    ++out.accepted;
    return true;
  });
  return out;
}

} // namespace swwlab
