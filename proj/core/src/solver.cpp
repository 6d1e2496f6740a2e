#include "swwlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "swwlab/errors.hpp"

namespace swwlab {
namespace {

const double kFdScale = std::cbrt(std::numeric_limits<double>::epsilon());
constexpr double kSingular = 1e-14;

bool finite(const RVec& f, int dim) {
  for (int i = 0; i < dim; ++i)
    if (!std::isfinite(f[i]))
      return false;
  return true;
}

RVec newton_step(const RJac& j, const RVec& f, int dim, bool& singular) {
  singular = false;
  if (dim == 1) {
    if (std::abs(j[0][0]) < kSingular) {
      singular = true;
      return {0.0, 0.0};
    }
    return {f[0] / j[0][0], 0.0};
  }
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  const double scale = std::max({std::abs(j[0][0]), std::abs(j[0][1]), std::abs(j[1][0]),
                                 std::abs(j[1][1])});
  if (std::abs(det) < kSingular * std::max(1.0, scale)) {
    singular = true;
    return {0.0, 0.0};
  }
  return {(j[1][1] * f[0] - j[0][1] * f[1]) / det, (j[0][0] * f[1] - j[1][0] * f[0]) / det};
}

// scalar bisection on [a, b] with F(a), F(b) of opposite sign
double bisect(const ImplicitSystem& sys, const Point& pt, double a, double fa, double b,
              double tol) {
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = sys.residual({m, 0.0}, pt)[0];
    if (std::abs(fm) <= tol || m == a || m == b)
      return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

bool find_bracket(const ImplicitSystem& sys, const Point& pt, double seed, const SolveOptions& opt,
                  double& a, double& fa, double& b) {
  const int n = std::max(2, opt.bracket_samples);
  const double h = opt.bracket_radius / n;
  double left = seed, fleft = sys.residual({seed, 0.0}, pt)[0];
  double right = seed, fright = fleft;
  if (!std::isfinite(fleft))
    return false;
  // nearest-first outward scan
  for (int i = 1; i <= n; ++i) {
    const double rr = seed + i * h;
    const double fr = sys.residual({rr, 0.0}, pt)[0];
    if (std::isfinite(fr) && std::isfinite(fright) && (fr < 0) != (fright < 0)) {
      a = right;
      fa = fright;
      b = rr;
      return true;
    }
    right = rr;
    fright = fr;
    const double rl = seed - i * h;
    const double fl = sys.residual({rl, 0.0}, pt)[0];
    if (std::isfinite(fl) && std::isfinite(fleft) && (fl < 0) != (fleft < 0)) {
      a = rl;
      fa = fl;
      b = left;
      return true;
    }
    left = rl;
    fleft = fl;
  }
  return false;
}

void finish(const ImplicitSystem& sys, const Point& pt, SolveReport& rep) {
  const RJac j = evaluate_jacobian(sys, rep.root, pt);
  jacobian_summary(j, sys.dim, rep.jac_min_sv, rep.jac_det);
}

} // namespace

double max_norm(const RVec& f, int dim) {
  double m = 0.0;
  for (int i = 0; i < dim; ++i)
    m = std::max(m, std::abs(f[i]));
  return std::isfinite(f[0]) && (dim < 2 || std::isfinite(f[1]))
             ? m
             : std::numeric_limits<double>::infinity();
}

RJac evaluate_jacobian(const ImplicitSystem& sys, const RVec& r, const Point& pt) {
  if (sys.jacobian)
    return sys.jacobian(r, pt);
  RJac j{};
  for (int c = 0; c < sys.dim; ++c) {
    const double h = kFdScale * std::max(1.0, std::abs(r[c]));
    RVec rp = r, rm = r;
    rp[c] += h;
    rm[c] -= h;
    const RVec fp = sys.residual(rp, pt), fm = sys.residual(rm, pt);
    for (int i = 0; i < sys.dim; ++i)
      j[i][c] = (fp[i] - fm[i]) / (rp[c] - rm[c]);
  }
  return j;
}

void jacobian_summary(const RJac& j, int dim, double& min_sv, double& det) {
  if (dim == 1) {
    det = j[0][0];
    min_sv = std::abs(det);
    return;
  }
  const double a = j[0][0], b = j[0][1], c = j[1][0], d = j[1][1];
  det = a * d - b * c;
  // singular values of a 2x2: s1 s2 = |det|, s1^2 + s2^2 = ||J||_F^2
  const double fro = a * a + b * b + c * c + d * d;
  const double disc = std::sqrt(std::max(0.0, fro * fro - 4.0 * det * det));
  const double s1 = std::sqrt(0.5 * (fro + disc));
  min_sv = s1 > 0.0 ? std::abs(det) / s1 : 0.0;
}

SolveReport solve(const ImplicitSystem& sys, const Point& pt, const RVec& seed, double tol,
                  int max_iter, const SolveOptions& opt) {
  SolveReport rep;
  const int dim = sys.dim;
  RVec r = seed;
  RVec f = sys.residual(r, pt);
  double fn = max_norm(f, dim);
  bool singular_hit = false;
  int it = 0;
  if (!finite(r, dim) || !std::isfinite(fn)) {
    rep.root = r;
    rep.residual = fn;
    rep.status = SolveStatus::NonFinite;
    return rep;
  }
  while (fn > tol && it < max_iter) {
    ++it;
    const RJac j = evaluate_jacobian(sys, r, pt);
    bool singular = false;
    const RVec dr = newton_step(j, f, dim, singular);
    if (singular) {
      singular_hit = true;
      break;
    }
    double lam = 1.0;
    RVec rn{}, fnew{};
    double nn = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 12; ++k) {
      for (int i = 0; i < dim; ++i)
        rn[i] = r[i] - lam * dr[i];
      fnew = sys.residual(rn, pt);
      nn = max_norm(fnew, dim);
      if (nn < fn)
        break;
      lam *= 0.5;
    }
    if (!std::isfinite(nn))
      break;
    r = rn;
    f = fnew;
    fn = nn;
  }
  if (fn <= tol && opt.polish) {
    // one extra step so the root sits at rounding level, not just inside tol
    const RJac j = evaluate_jacobian(sys, r, pt);
    bool singular = false;
    const RVec dr = newton_step(j, f, dim, singular);
    if (!singular) {
      RVec rn{};
      for (int i = 0; i < dim; ++i)
        rn[i] = r[i] - dr[i];
      const RVec fnew = sys.residual(rn, pt);
      const double nn = max_norm(fnew, dim);
      if (nn <= fn) {
        r = rn;
        f = fnew;
        fn = nn;
      }
    }
  }
  if (fn > tol && dim == 1 && opt.bracket_radius > 0.0) {
    double a = 0, fa = 0, b = 0;
    if (find_bracket(sys, pt, seed[0], opt, a, fa, b)) {
      const double m = bisect(sys, pt, a, fa, b, tol);
      const RVec fm = sys.residual({m, 0.0}, pt);
      const double nm = max_norm(fm, 1);
      if (nm < fn) {
        r = {m, 0.0};
        fn = nm;
        singular_hit = false;
      }
    }
  }
  rep.root = r;
  rep.iterations = it;
  rep.residual = fn;
  rep.converged = fn <= tol;
  if (rep.converged)
    rep.status = SolveStatus::Converged;
  else if (singular_hit)
    rep.status = SolveStatus::SingularJacobian;
  else if (!std::isfinite(fn))
    rep.status = SolveStatus::NonFinite;
  else
    rep.status = SolveStatus::NoConvergence;
  if (finite(r, dim))
    finish(sys, pt, rep);
  return rep;
}

SolveReport solve_newton(const ImplicitSystem& sys, const Point& pt, const RVec& seed, double tol,
                         int max_iter, const SolveOptions& opt) {
  SolveReport rep = solve(sys, pt, seed, tol, max_iter, opt);
  if (rep.status == SolveStatus::SingularJacobian)
    throw SingularJacobian("singular dF/dr with no bisection bracket");
  if (!rep.converged)
    throw NoConvergence(rep.iterations, rep.residual);
  return rep;
}

SolveReport continue_root(const ImplicitSystem& sys, const Point& from, const RVec& r_from,
                          const Point& to, double tol, int max_iter,
                          const ContinuationOptions& copt, const SolveOptions& opt) {
  const double dist =
      std::max({std::abs(to.t - from.t), std::abs(to.x - from.x), std::abs(to.y - from.y)});
  const auto at = [&](double s) {
    return Point{from.t + s * (to.t - from.t), from.x + s * (to.x - from.x),
                 from.y + s * (to.y - from.y)};
  };
  // the sub-solves only need to land in the basin of the next step
  const double inner_tol = std::max(tol, 1e-10);
  SolveOptions local = opt;
  local.bracket_radius = 0.0; // no branch jumping along the path
  int n = std::max(1, static_cast<int>(std::ceil(dist / copt.max_step)));
  double s = 0.0;
  double ds = 1.0 / n;
  RVec r = r_from;
  int halvings = 0;
  int total_it = 0;
  while (1.0 - s > 1e-15) {
    const double s_next = std::min(1.0, s + ds);
    if (s_next >= 1.0)
      break;
    SolveReport step = solve(sys, at(s_next), r, inner_tol, max_iter, local);
    total_it += step.iterations;
    if (!step.converged) {
      if (++halvings > copt.max_halvings) {
        step.iterations = total_it;
        return step;
      }
      ds *= 0.5;
      continue;
    }
    r = step.root;
    s = s_next;
  }
  SolveReport fin = solve(sys, to, r, tol, max_iter, opt);
  fin.iterations += total_it;
  return fin;
}

Point Grid::point(std::size_t idx) const {
  const int iy = static_cast<int>(idx % y.n);
  idx /= y.n;
  const int ix = static_cast<int>(idx % x.n);
  const int it = static_cast<int>(idx / x.n);
  return point(it, ix, iy);
}

void validate(const Grid& g) {
  for (const Axis* a : {&g.t, &g.x, &g.y}) {
    if (a->n < 1)
      throw DomainError("grid counts must be >= 1");
    if (!std::isfinite(a->lo) || !std::isfinite(a->hi))
      throw DomainError("grid ranges must be finite");
  }
}

int resolve_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("SWWLAB_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v > 0)
        n = static_cast<int>(v);
    }
  }
  if (n <= 0)
    n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

void flag_catastrophe(SolveReport& rep, double reference_det, double catastrophe_tol) {
  if (!rep.converged)
    return;
  const bool fold = reference_det != 0.0 && rep.jac_det != 0.0 &&
                    (rep.jac_det > 0.0) != (reference_det > 0.0);
  rep.catastrophe = rep.jac_min_sv < catastrophe_tol || fold;
}

std::vector<SolveReport> sweep_grid(const ImplicitSystem& sys, const Grid& grid, double tol,
                                    const SweepOptions& opt) {
  validate(grid);
  const int K = std::max(1, opt.coarse_stride);
  const auto coarse_count = [K](int n) { return (n - 1) / K + 1; };
  const int ct = coarse_count(grid.t.n), cx = coarse_count(grid.x.n), cy = coarse_count(grid.y.n);

  double ref_det = 0.0, ref_sv = 0.0;
  try {
    jacobian_summary(evaluate_jacobian(sys, opt.seed_root, opt.seed_point), sys.dim, ref_sv,
                     ref_det);
  } catch (const std::exception&) {
    ref_det = 0.0;
  }

  const auto guarded = [&](auto&& fn) {
    try {
      return fn();
    } catch (const std::exception&) {
      SolveReport bad;
      bad.status = SolveStatus::NonFinite;
      bad.root = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
      bad.residual = std::numeric_limits<double>::infinity();
      return bad;
    }
  };
  const auto from_seed = [&](const Point& p) {
    return guarded([&] {
      return continue_root(sys, opt.seed_point, opt.seed_root, p, tol, opt.max_iter,
                           opt.continuation);
    });
  };

  // pass 1: coarse cells, serial, row-major
  std::vector<SolveReport> coarse(static_cast<std::size_t>(ct) * cx * cy);
  const auto cidx = [&](int a, int b, int c) { return (static_cast<std::size_t>(a) * cx + b) * cy + c; };
  const auto cpoint = [&](int a, int b, int c) { return grid.point(a * K, b * K, c * K); };
  for (int a = 0; a < ct; ++a)
    for (int b = 0; b < cx; ++b)
      for (int c = 0; c < cy; ++c) {
        const Point p = cpoint(a, b, c);
        const SolveReport* nb = nullptr;
        Point np{};
        if (c > 0) {
          nb = &coarse[cidx(a, b, c - 1)];
          np = cpoint(a, b, c - 1);
        } else if (b > 0) {
          nb = &coarse[cidx(a, b - 1, 0)];
          np = cpoint(a, b - 1, 0);
        } else if (a > 0) {
          nb = &coarse[cidx(a - 1, 0, 0)];
          np = cpoint(a - 1, 0, 0);
        }
        SolveReport rep;
        if (nb && nb->converged && !nb->catastrophe)
          rep = guarded([&] {
            return continue_root(sys, np, nb->root, p, tol, opt.max_iter, opt.continuation);
          });
        else
          rep = from_seed(p);
        flag_catastrophe(rep, ref_det, opt.catastrophe_tol);
        if (!rep.converged && !(nb == nullptr)) {
          SolveReport retry = from_seed(p);
          flag_catastrophe(retry, ref_det, opt.catastrophe_tol);
          if (retry.converged)
            rep = retry;
        }
        coarse[cidx(a, b, c)] = rep;
      }

  // pass 2: every fine cell from its nearest coarse cell, independently
  std::vector<SolveReport> out(grid.size());
  const auto nearest = [K](int i, int n) {
    const int c = (i + K / 2) / K;
    return std::min(c, (n - 1) / K);
  };
  const auto solve_cell = [&](std::size_t idx) {
    const int iy = static_cast<int>(idx % grid.y.n);
    const int ix = static_cast<int>((idx / grid.y.n) % grid.x.n);
    const int it = static_cast<int>(idx / (static_cast<std::size_t>(grid.y.n) * grid.x.n));
    const int a = nearest(it, grid.t.n), b = nearest(ix, grid.x.n), c = nearest(iy, grid.y.n);
    const Point p = grid.point(it, ix, iy);
    const SolveReport& cr = coarse[cidx(a, b, c)];
    SolveReport rep;
    if (cr.converged && !cr.catastrophe)
      rep = guarded([&] {
        return continue_root(sys, cpoint(a, b, c), cr.root, p, tol, opt.max_iter,
                             opt.continuation);
      });
    else
      rep = from_seed(p);
    flag_catastrophe(rep, ref_det, opt.catastrophe_tol);
    out[idx] = rep;
  };

  const int nthreads = std::min<std::size_t>(resolve_threads(opt.threads), out.size());
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < out.size(); ++i)
      solve_cell(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < out.size(); i += nthreads)
          solve_cell(i);
      });
    for (auto& th : pool)
      th.join();
  }
  return out;
}

} // namespace swwlab
