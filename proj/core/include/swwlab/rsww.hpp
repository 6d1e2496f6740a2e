#pragma once

#include <functional>

#include "swwlab/catalog.hpp"

namespace swwlab {

struct TimeShift {
  double t0 = 0.0;

  static TimeShift standard(double omega); // pi / (2 omega)
};

// (t, x, y) -> (t', x', y'); SingularTime when |sin(omega t)| <= 1e-12
Point map_independent(const Point& pt, double omega);

// state at the mapped point -> rotating state at pt
State lift_state(const Point& pt, const State& s, double omega);

bool is_singular_time(double t, double omega);

// Point whose image is the SWW seed point, in the same regular time interval
// as `near` (after the shift).
Point reference_point(double omega, const TimeShift& shift, double near_t = 0.0);

// The SWW residual composed with the shifted map; unknowns unchanged.
ImplicitSystem rsww_system(const SolutionDescriptor& d, double omega, const TimeShift& shift);

Evaluation eval_rsww(const SolutionDescriptor& d, const Point& pt, double omega,
                     const TimeShift& shift, const EvalOptions& opt = {});

State eval_rsww_state(const SolutionDescriptor& d, const Point& pt, double omega,
                      const TimeShift& shift, double tol);

GridField eval_rsww_grid(const SolutionDescriptor& d, const Grid& grid, double omega,
                         const TimeShift& shift, const EvalOptions& opt = {},
                         SweepOptions sweep = {});

} // namespace swwlab
