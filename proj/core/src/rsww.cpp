#include "swwlab/rsww.hpp"

#include <cmath>
#include <numbers>

#include "swwlab/errors.hpp"

namespace swwlab {
namespace {

constexpr double kPi = std::numbers::pi;

void check_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("rotating lift needs omega > 0");
}

} // namespace

TimeShift TimeShift::standard(double omega) {
  check_omega(omega);
  return {kPi / (2.0 * omega)};
}

bool is_singular_time(double t, double omega) { return std::abs(std::sin(omega * t)) <= 1e-12; }

Point map_independent(const Point& pt, double omega) {
  check_omega(omega);
  const double s = std::sin(omega * pt.t);
  if (std::abs(s) <= 1e-12)
    throw SingularTime("sin(omega t) = 0");
  const double ct = std::cos(omega * pt.t) / s;
  return {-ct / (2.0 * omega), 0.5 * (pt.y - pt.x * ct), -0.5 * (pt.x + pt.y * ct)};
}

State lift_state(const Point& pt, const State& st, double omega) {
  check_omega(omega);
  const double s = std::sin(omega * pt.t);
  if (std::abs(s) <= 1e-12)
    throw SingularTime("sin(omega t) = 0");
  const double ct = std::cos(omega * pt.t) / s;
  return {-st.u * ct - st.v + omega * (pt.y + pt.x * ct),
          st.u - st.v * ct - omega * (pt.x - pt.y * ct), st.h / (s * s)};
}

Point reference_point(double omega, const TimeShift& shift, double near_t) {
  check_omega(omega);
  const double n = std::floor(omega * (near_t + shift.t0) / kPi);
  return {(n * kPi + 0.5 * kPi) / omega - shift.t0, 0.0, 0.0};
}

ImplicitSystem rsww_system(const SolutionDescriptor& d, double omega, const TimeShift& shift) {
  check_omega(omega);
  ImplicitSystem base = d.system();
  ImplicitSystem sys;
  sys.dim = base.dim;
  sys.residual = [res = base.residual, omega, t0 = shift.t0](const RVec& r, const Point& q) {
    return res(r, map_independent({q.t + t0, q.x, q.y}, omega));
  };
  return sys;
}

Evaluation eval_rsww(const SolutionDescriptor& d, const Point& pt, double omega,
                     const TimeShift& shift, const EvalOptions& opt) {
  const Point shifted{pt.t + shift.t0, pt.x, pt.y};
  const Point mapped = map_independent(shifted, omega);
  const ImplicitSystem sys = rsww_system(d, omega, shift);
  Evaluation ev = evaluate_along(d, sys, reference_point(omega, shift, pt.t), d.seed_root(), pt, opt);
  ev.invariants = d.invariants(ev.report.root, mapped);
  ev.state = lift_state(shifted, ev.state, omega);
  return ev;
}

State eval_rsww_state(const SolutionDescriptor& d, const Point& pt, double omega,
                      const TimeShift& shift, double tol) {
  EvalOptions opt;
  opt.tol = tol;
  return eval_rsww(d, pt, omega, shift, opt).state;
}

GridField eval_rsww_grid(const SolutionDescriptor& d, const Grid& grid, double omega,
                         const TimeShift& shift, const EvalOptions& opt, SweepOptions sweep) {
  validate(grid);
  const double mid_t = 0.5 * (grid.t.lo + grid.t.hi);
  sweep.seed_point = reference_point(omega, shift, mid_t);
  sweep.seed_root = d.seed_root();
  sweep.max_iter = opt.max_iter;
  sweep.catastrophe_tol = opt.catastrophe_tol;
  sweep.continuation = opt.continuation;
  const auto reps = sweep_grid(rsww_system(d, omega, shift), grid, opt.tol, sweep);
  const auto to_sww = [omega, t0 = shift.t0](const Point& p) {
    return map_independent({p.t + t0, p.x, p.y}, omega);
  };
  const auto lift = [omega, t0 = shift.t0](const Point& p, const State& s) {
    return lift_state({p.t + t0, p.x, p.y}, s, omega);
  };
  GridField f = assemble_field(d, grid, reps, to_sww, lift);
  for (auto& c : f.cells)
    c.singular = is_singular_time(c.pt.t + shift.t0, omega);
  return f;
}

} // namespace swwlab
