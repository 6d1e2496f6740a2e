#include "swwlab/catalog.hpp"

#include <cmath>
#include <limits>

#include "swwlab/errors.hpp"

namespace swwlab {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kPi = std::numbers::pi;

const std::vector<FamilyInfo> kFamilies = {
    {Family::E_GENERIC, "E_GENERIC", 1, "entropic simple wave, constant direction",
     "u0 h0 dir1", "phi", "u = u0 - (l2/l1) phi(r), v = phi(r), h = h0"},
    {Family::E_PERIODIC, "E_PERIODIC", 1, "entropic simple wave, direction (u, v)", "C h0", "-",
     "u = C sin r, v = C cos r, h = h0"},
    {Family::E_HYPERBOLIC, "E_HYPERBOLIC", 1, "entropic simple wave, direction (v, u)", "C h0",
     "phi", "u = phi(r), v = C / phi(r), h = h0"},
    {Family::S_SIMPLE, "S_SIMPLE", 1, "acoustic simple wave, constant direction", "u0 v0 dir1",
     "phi", "u = u0 + 2 l1 sqrt(g) phi, v = v0 + 2 l2 sqrt(g) phi, h = phi^2"},
    {Family::S_ROTATING, "S_ROTATING", 1, "acoustic simple wave, direction (sin phi, cos phi)",
     "u0 v0 h0", "phi", "u = u0 - 2 sqrt(g) cos phi, v = v0 + 2 sqrt(g) sin phi, h = (phi + h0)^2"},
    {Family::S_FRESNEL, "S_FRESNEL", 1, "acoustic simple wave with Fresnel velocity profile",
     "u0 v0 h0", "phi (>= 0)", "u, v via Fresnel S, C of sqrt(2 phi / pi), h = (sqrt phi + h0)^2"},
    {Family::ES_RANK2, "ES_RANK2", 2, "entropic-acoustic interaction, scattering", "h0 eps",
     "F G lam21", "u = eps G(s)/sqrt3 + F(r2), v = G(s), h = (F - 2 eps G/sqrt3 + h0)^2 / 4g"},
    {Family::SS_RANK2, "SS_RANK2", 2, "acoustic-acoustic interaction, nonscattering",
     "u0 v0 eps dir1 dir2", "h1 h2", "u, v linear in h1(r1), h2(r2), h = (h1 + h2)^2"},
    {Family::SS_MIXED, "SS_MIXED", 2, "acoustic-acoustic interaction, opposite signs",
     "u0 v0 phi1 phi2", "h1 h2", "as SS_RANK2 with the second wave reversed, |phi1 - phi2| = pi/3"},
    {Family::EE_DEGENERATE, "EE_DEGENERATE", 2, "entropic-entropic attempt, degenerates to rank 1",
     "m c[5] h0", "-", "u = (-s)^m, v = C5 exp(C3 m s / C1), s = (C1 r2 + C2)/(C3 r1 + C4)"},
    {Family::SS_BRANCH_A, "SS_BRANCH_A", 1, "acoustic-acoustic branch collapsing to an entropic wave",
     "v0 h0", "F", "u = F(s), v = v0 + u^2/2, h = h0"},
};

double sq(double x) { return x * x; }

const ProfileFn& need(const std::optional<ProfileFn>& p, const char* name) {
  if (!p)
    throw MissingProfile(std::string("missing profile '") + name + "'");
  return *p;
}

std::array<double, 2> unit(std::array<double, 2> d) {
  const double n = std::hypot(d[0], d[1]);
  if (n == 0.0 || !std::isfinite(n))
    throw ZeroDirection("wave direction must be nonzero");
  return {d[0] / n, d[1] / n};
}

void require_h0(double h0) {
  if (!(h0 > 0.0))
    throw NonPositiveH0("h0 must be positive");
}

// SS-type residual pieces shared by SS_RANK2 and SS_MIXED
struct SSData {
  std::array<double, 2> l1, l2;
  int eps;
};

SSData ss_data(const SolutionDescriptor& d) {
  if (d.family == Family::SS_MIXED)
    return {{std::sin(d.c.phi1), std::cos(d.c.phi1)}, {std::sin(d.c.phi2), std::cos(d.c.phi2)}, -1};
  return {d.c.dir1, d.c.dir2, d.c.eps};
}

double es_lambda(const SolutionDescriptor& d, double v) {
  const double l = d.p.lam21 ? (*d.p.lam21)(v) : 1.0;
  if (l == 0.0 || !std::isfinite(l))
    throw DomainError("lam21(v) vanishes");
  return l;
}

double ee_s(const Constants& c, double r1, double r2) {
  return (c.c[0] * r2 + c.c[1]) / (c.c[2] * r1 + c.c[3]);
}

} // namespace

const std::vector<FamilyInfo>& family_table() { return kFamilies; }

const FamilyInfo& family_info(Family f) {
  for (const auto& i : kFamilies)
    if (i.family == f)
      return i;
  throw ConfigError("unknown family");
}

const char* to_string(Family f) { return family_info(f).id; }

Family family_from_string(const std::string& s) {
  for (const auto& i : kFamilies)
    if (s == i.id)
      return i.family;
  throw ConfigError("unknown family '" + s + "'");
}

int SolutionDescriptor::rank() const { return family_info(family).rank; }

ImplicitSystem SolutionDescriptor::system() const {
  ImplicitSystem sys;
  sys.dim = rank();
  const SolutionDescriptor d = *this;
  const double sg = std::sqrt(d.params.g);
  switch (family) {
  case Family::E_GENERIC:
    sys.residual = [d](const RVec& r, const Point& q) {
      const double l1 = d.c.dir1[0], l2 = d.c.dir1[1];
      return RVec{r[0] - (-d.c.u0 * l1 * q.t + l1 * q.x + l2 * q.y), 0.0};
    };
    break;
  case Family::E_PERIODIC:
    sys.residual = [d](const RVec& r, const Point& q) {
      const double C = d.c.C;
      return RVec{r[0] + C * (C * q.t - q.x * std::sin(r[0]) - q.y * std::cos(r[0])), 0.0};
    };
    break;
  case Family::E_HYPERBOLIC:
    sys.residual = [d](const RVec& r, const Point& q) {
      const double f = (*d.p.phi)(r[0]);
      if (f == 0.0)
        throw DomainError("phi(r) = 0 in C / phi(r)");
      return RVec{r[0] - (-2.0 * d.c.C * q.t + d.c.C / f * q.x + f * q.y), 0.0};
    };
    break;
  case Family::S_SIMPLE:
    sys.residual = [d, sg](const RVec& r, const Point& q) {
      const double l1 = d.c.dir1[0], l2 = d.c.dir1[1];
      const double f = (*d.p.phi)(r[0]);
      return RVec{r[0] - (-(l1 * d.c.u0 + l2 * d.c.v0 + 3.0 * sg * f) * q.t + l1 * q.x + l2 * q.y),
                  0.0};
    };
    break;
  case Family::S_ROTATING:
    sys.residual = [d, sg](const RVec& r, const Point& q) {
      const double f = (*d.p.phi)(r[0]);
      const double s = std::sin(f), c = std::cos(f);
      return RVec{r[0] - (-(d.c.u0 * s + d.c.v0 * c + sg * (f + d.c.h0)) * q.t + s * q.x + c * q.y),
                  0.0};
    };
    break;
  case Family::S_FRESNEL:
    sys.residual = [d, sg](const RVec& r, const Point& q) {
      const State st = d.state(r);
      const double f = (*d.p.phi)(r[0]);
      const double s = std::sin(f), c = std::cos(f);
      return RVec{r[0] - (-(s * st.u + c * st.v + sg * (std::sqrt(f) + d.c.h0)) * q.t + s * q.x +
                          c * q.y),
                  0.0};
    };
    break;
  case Family::ES_RANK2:
    sys.residual = [d](const RVec& z, const Point& q) {
      const double r2 = z[0], s = z[1];
      const double e = d.c.eps;
      const double G = (*d.p.G)(s), F = (*d.p.F)(r2);
      const double L = es_lambda(d, G);
      const double r1 = L * ((2.0 * G + kSqrt3 * e * F) * q.t - kSqrt3 * e * q.x - q.y);
      return RVec{r2 - ((1.5 * F + 0.5 * d.c.h0) * q.t - q.x),
                  s - (r2 - kSqrt3 * e / (2.0 * L) * r1)};
    };
    break;
  case Family::SS_RANK2:
  case Family::SS_MIXED:
    sys.residual = [d, sg, ss = ss_data(d)](const RVec& r, const Point& q) {
      const double a = (*d.p.h1)(r[0]), b = (*d.p.h2)(r[1]);
      const auto& l1 = ss.l1;
      const auto& l2 = ss.l2;
      return RVec{
          r[0] - (-(l1[0] * d.c.u0 + l1[1] * d.c.v0 + 3.0 * sg * a) * q.t + l1[0] * q.x + l1[1] * q.y),
          r[1] - (-(l2[0] * d.c.u0 + l2[1] * d.c.v0 + 3.0 * ss.eps * sg * b) * q.t + l2[0] * q.x +
                  l2[1] * q.y)};
    };
    break;
  case Family::EE_DEGENERATE:
    sys.residual = [d](const RVec& r, const Point& q) {
      const State st = d.state(r);
      return RVec{r[0] - q.t + q.x / st.u, r[1] - q.t + q.y / st.v};
    };
    break;
  case Family::SS_BRANCH_A:
    sys.residual = [d](const RVec& r, const Point& q) {
      const double f = (*d.p.F)(r[0]);
      const double den = 1.0 + f * f;
      return RVec{r[0] - (-f * (f * f - 2.0 * d.c.v0) / den * q.t + 2.0 * f * f / den * q.x -
                          2.0 * f / den * q.y),
                  0.0};
    };
    break;
  }
  return sys;
}

State SolutionDescriptor::state(const RVec& z) const {
  const double sg = std::sqrt(params.g);
  switch (family) {
  case Family::E_GENERIC: {
    const double f = (*p.phi)(z[0]);
    return {c.u0 - c.dir1[1] / c.dir1[0] * f, f, c.h0};
  }
  case Family::E_PERIODIC:
    return {c.C * std::sin(z[0]), c.C * std::cos(z[0]), c.h0};
  case Family::E_HYPERBOLIC: {
    const double f = (*p.phi)(z[0]);
    if (f == 0.0)
      throw DomainError("phi(r) = 0 in C / phi(r)");
    return {f, c.C / f, c.h0};
  }
  case Family::S_SIMPLE: {
    const double f = (*p.phi)(z[0]);
    return {c.u0 + 2.0 * c.dir1[0] * sg * f, c.v0 + 2.0 * c.dir1[1] * sg * f, f * f};
  }
  case Family::S_ROTATING: {
    const double f = (*p.phi)(z[0]);
    return {c.u0 - 2.0 * sg * std::cos(f), c.v0 + 2.0 * sg * std::sin(f), sq(f + c.h0)};
  }
  case Family::S_FRESNEL: {
    const double f = (*p.phi)(z[0]);
    if (!(f >= 0.0))
      throw DomainError("phi(r) < 0 under a square root");
    double S = 0.0, C = 0.0;
    fresnel(std::sqrt(2.0 * f / kPi), S, C);
    const double k = std::sqrt(2.0 * kPi * params.g);
    return {c.u0 + k * S, c.v0 + k * C, sq(std::sqrt(f) + c.h0)};
  }
  case Family::ES_RANK2: {
    const double F = (*p.F)(z[0]), G = (*p.G)(z[1]);
    const double e = c.eps;
    return {kSqrt3 / 3.0 * e * G + F, G, sq(F - 2.0 * kSqrt3 / 3.0 * e * G + c.h0) / (4.0 * params.g)};
  }
  case Family::SS_RANK2:
  case Family::SS_MIXED: {
    const SSData ss = ss_data(*this);
    const double a = (*p.h1)(z[0]), b = (*p.h2)(z[1]);
    return {c.u0 + 2.0 * sg * (ss.l1[0] * a + ss.eps * ss.l2[0] * b),
            c.v0 + 2.0 * sg * (ss.l1[1] * a + ss.eps * ss.l2[1] * b), sq(a + b)};
  }
  case Family::EE_DEGENERATE: {
    const double s = ee_s(c, z[0], z[1]);
    return {std::pow(-s, c.m), c.c[4] * std::exp(c.c[2] / c.c[0] * c.m * s), c.h0};
  }
  case Family::SS_BRANCH_A: {
    const double f = (*p.F)(z[0]);
    return {f, c.v0 + 0.5 * f * f, c.h0};
  }
  }
  return {};
}

RVec SolutionDescriptor::invariants(const RVec& z, const Point& q) const {
  if (family != Family::ES_RANK2)
    return z;
  const double G = (*p.G)(z[1]), F = (*p.F)(z[0]);
  const double e = c.eps;
  const double L = es_lambda(*this, G);
  const double r1 = L * ((2.0 * G + kSqrt3 * e * F) * q.t - kSqrt3 * e * q.x - q.y);
  return {r1, z[0]};
}

SolutionDescriptor make_solution(Family family, const Constants& c, const Profiles& p,
                                 const PhysParams& params) {
  validate(params);
  SolutionDescriptor d;
  d.family = family;
  d.c = c;
  d.p = p;
  d.params = params;
  d.label = to_string(family);
  d.c.eps = c.eps >= 0 ? 1 : -1;
  if (c.eps != 1 && c.eps != -1)
    throw DomainError("eps must be +1 or -1");
  for (const auto* prof : {&p.phi, &p.F, &p.G, &p.h1, &p.h2, &p.lam21})
    if (*prof)
      validate(**prof);

  switch (family) {
  case Family::E_GENERIC:
    need(p.phi, "phi");
    require_h0(c.h0);
    if (c.dir1[0] == 0.0)
      throw DomainError("E_GENERIC needs dir1[0] != 0");
    break;
  case Family::E_PERIODIC:
    require_h0(c.h0);
    break;
  case Family::E_HYPERBOLIC:
    need(p.phi, "phi");
    require_h0(c.h0);
    if ((*p.phi)(0.0) == 0.0)
      throw DomainError("E_HYPERBOLIC needs phi(0) != 0");
    break;
  case Family::S_SIMPLE:
    need(p.phi, "phi");
    d.c.dir1 = unit(c.dir1);
    break;
  case Family::S_ROTATING:
    need(p.phi, "phi");
    require_h0(c.h0);
    break;
  case Family::S_FRESNEL:
    need(p.phi, "phi");
    require_h0(c.h0);
    if (!((*p.phi)(0.0) >= 0.0))
      throw DomainError("S_FRESNEL needs phi >= 0");
    break;
  case Family::ES_RANK2:
    need(p.F, "F");
    need(p.G, "G");
    require_h0(c.h0);
    es_lambda(d, (*p.G)(0.0));
    break;
  case Family::SS_RANK2: {
    need(p.h1, "h1");
    need(p.h2, "h2");
    d.c.dir1 = unit(c.dir1);
    d.c.dir2 = unit(c.dir2);
    const double dot = d.c.dir1[0] * d.c.dir2[0] + d.c.dir1[1] * d.c.dir2[1];
    if (std::abs(dot + 0.5 * d.c.eps) > 1e-10)
      throw AngleViolation("SS_RANK2 needs dir1 . dir2 = -eps/2, got " + std::to_string(dot));
    break;
  }
  case Family::SS_MIXED: {
    need(p.h1, "h1");
    need(p.h2, "h2");
    const double diff = std::fmod(std::abs(c.phi1 - c.phi2), 2.0 * kPi);
    if (std::abs(diff - kPi / 3.0) > 1e-10 && std::abs(diff - 5.0 * kPi / 3.0) > 1e-10)
      throw AngleViolation("SS_MIXED needs |phi1 - phi2| = pi/3");
    break;
  }
  case Family::EE_DEGENERATE: {
    require_h0(c.h0);
    if (c.m == -1)
      throw DomainError("EE_DEGENERATE needs m != -1");
    if (c.c[0] == 0.0)
      throw DomainError("EE_DEGENERATE needs C1 != 0");
    const State s0 = d.state({0.0, 0.0});
    if (!(std::isfinite(s0.u) && std::isfinite(s0.v)) || s0.u == 0.0 || s0.v == 0.0)
      throw DomainError("EE_DEGENERATE needs nonzero u, v at the origin");
    break;
  }
  case Family::SS_BRANCH_A:
    need(p.F, "F");
    require_h0(c.h0);
    break;
  }
  return d;
}

Evaluation evaluate_along(const SolutionDescriptor& d, const ImplicitSystem& sys,
                          const Point& seed_pt, const RVec& seed_root, const Point& pt,
                          const EvalOptions& opt) {
  Evaluation ev;
  double ref_sv = 0.0, ref_det = 0.0;
  jacobian_summary(evaluate_jacobian(sys, seed_root, seed_pt), sys.dim, ref_sv, ref_det);
  ev.report = continue_root(sys, seed_pt, seed_root, pt, opt.tol, opt.max_iter, opt.continuation);
  flag_catastrophe(ev.report, ref_det, opt.catastrophe_tol);
  ev.state = d.state(ev.report.root);
  return ev;
}

Evaluation eval_sww(const SolutionDescriptor& d, const Point& pt, const EvalOptions& opt) {
  Evaluation ev = evaluate_along(d, d.system(), d.seed_point(), d.seed_root(), pt, opt);
  ev.invariants = d.invariants(ev.report.root, pt);
  return ev;
}

Evaluation eval_sww(const SolutionDescriptor& d, const Point& pt, double tol) {
  EvalOptions opt;
  opt.tol = tol;
  return eval_sww(d, pt, opt);
}

std::size_t GridField::failures() const {
  std::size_t n = 0;
  for (const auto& c : cells)
    n += c.converged ? 0 : 1;
  return n;
}

std::size_t GridField::singular_cells() const {
  std::size_t n = 0;
  for (const auto& c : cells)
    n += c.singular ? 1 : 0;
  return n;
}

GridField assemble_field(const SolutionDescriptor& d, const Grid& grid,
                         const std::vector<SolveReport>& reps,
                         const std::function<Point(const Point&)>& to_sww,
                         const std::function<State(const Point&, const State&)>& lift) {
  GridField out;
  out.grid = grid;
  out.rank = d.rank();
  out.cells.resize(reps.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    GridCell& c = out.cells[i];
    c.pt = grid.point(i);
    c.report = reps[i];
    c.converged = reps[i].converged;
    c.catastrophe = reps[i].catastrophe;
    c.state = {nan, nan, nan};
    c.invariants = {nan, nan};
    if (!c.converged)
      continue;
    try {
      const Point q = to_sww ? to_sww(c.pt) : c.pt;
      const State s = d.state(reps[i].root);
      c.state = lift ? lift(c.pt, s) : s;
      c.invariants = d.invariants(reps[i].root, q);
    } catch (const std::exception&) {
      c.converged = false;
      c.state = {nan, nan, nan};
    }
  }
  return out;
}

GridField eval_grid(const SolutionDescriptor& d, const Grid& grid, const EvalOptions& opt,
                    SweepOptions sweep) {
  sweep.seed_point = d.seed_point();
  sweep.seed_root = d.seed_root();
  sweep.max_iter = opt.max_iter;
  sweep.catastrophe_tol = opt.catastrophe_tol;
  sweep.continuation = opt.continuation;
  const auto reps = sweep_grid(d.system(), grid, opt.tol, sweep);
  return assemble_field(d, grid, reps, nullptr, nullptr);
}

const char* table5_label(int row) {
  switch (row) {
  case 1: return "anti-bump";
  case 2: return "bump";
  case 3: return "bump";
  case 4: return "kink";
  case 5: return "periodic";
  }
  return "";
}

SolutionDescriptor table5(int row, const PhysParams& params, const Table5Options& o) {
  Constants c;
  c.h0 = o.h0;
  c.u0 = o.u0;
  c.v0 = o.v0;
  c.eps = 1;
  c.dir1 = {1.0, 0.0};
  c.dir2 = {-0.5, kSqrt3 / 2.0};
  Profiles p;
  SolutionDescriptor d;
  switch (row) {
  case 1:
  case 2: {
    const auto k = row == 1 ? ProfileKind::TanhSq : ProfileKind::SechSq;
    p.F = ProfileFn::of(k);
    p.G = ProfileFn::of(k);
    p.lam21 = ProfileFn::constant(1.0);
    d = make_solution(Family::ES_RANK2, c, p, params);
    break;
  }
  case 3:
    p.h1 = ProfileFn::of(ProfileKind::SechSq);
    p.h2 = ProfileFn::of(ProfileKind::SechSq);
    d = make_solution(Family::SS_RANK2, c, p, params);
    break;
  case 4:
    p.h1 = ProfileFn::of(ProfileKind::Kink, o.A1, o.B1);
    p.h2 = ProfileFn::of(ProfileKind::Kink, o.A2, o.B2);
    d = make_solution(Family::SS_RANK2, c, p, params);
    break;
  case 5:
    p.h1 = ProfileFn::of(ProfileKind::WeierstrassRecip, o.A1);
    p.h2 = ProfileFn::of(ProfileKind::WeierstrassRecip, o.A2);
    d = make_solution(Family::SS_RANK2, c, p, params);
    break;
  default:
    throw DomainError("table5 rows are 1..5");
  }
  d.label = std::string("table5 row ") + std::to_string(row) + " (" + table5_label(row) + ")";
  return d;
}

SolutionDescriptor representative(Family f, const PhysParams& params) {
  Constants c;
  Profiles p;
  switch (f) {
  case Family::E_GENERIC:
    c.u0 = 0.2;
    c.dir1 = {1.0, 0.5};
    p.phi = ProfileFn::of(ProfileKind::Sin, 0.3);
    break;
  case Family::E_PERIODIC:
    c.h0 = 2.0;
    break;
  case Family::E_HYPERBOLIC:
    p.phi = ProfileFn::of(ProfileKind::SechSq, 0.3, 0.0, 1.5);
    break;
  case Family::S_SIMPLE:
    p.phi = ProfileFn::of(ProfileKind::SechSq, 0.2, 0.0, 1.0);
    break;
  case Family::S_ROTATING:
    p.phi = ProfileFn::of(ProfileKind::SechSq, 0.3);
    break;
  case Family::S_FRESNEL:
    p.phi = ProfileFn::of(ProfileKind::SechSq, 0.2, 0.0, 0.5);
    break;
  case Family::ES_RANK2:
    return table5(2, params);
  case Family::SS_RANK2:
    return table5(3, params);
  case Family::SS_MIXED:
    p.h1 = ProfileFn::of(ProfileKind::SechSq, 0.3, 0.0, 1.0);
    p.h2 = ProfileFn::of(ProfileKind::SechSq, 0.2, 0.0, 0.8);
    break;
  case Family::EE_DEGENERATE:
    break;
  case Family::SS_BRANCH_A:
    p.F = ProfileFn::of(ProfileKind::Sin, 0.3, 0.0, 0.2);
    break;
  }
  return make_solution(f, c, p, params);
}

} // namespace swwlab
