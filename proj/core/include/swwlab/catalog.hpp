#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "swwlab/core.hpp"
#include "swwlab/profile.hpp"
#include "swwlab/solver.hpp"

namespace swwlab {

enum class Family {
  E_GENERIC,
  E_PERIODIC,
  E_HYPERBOLIC,
  S_SIMPLE,
  S_ROTATING,
  S_FRESNEL,
  ES_RANK2,
  SS_RANK2,
  SS_MIXED,
  EE_DEGENERATE,
  SS_BRANCH_A,
};

struct FamilyInfo {
  Family family;
  const char* id;
  int rank;
  const char* origin;
  const char* constants;
  const char* profiles;
  const char* summary;
};

const std::vector<FamilyInfo>& family_table();
const FamilyInfo& family_info(Family f);
const char* to_string(Family f);
Family family_from_string(const std::string& s); // ConfigError "unknown family"

struct Constants {
  double u0 = 0.0;
  double v0 = 0.0;
  double h0 = 1.0;
  double C = 1.0;
  int eps = 1;
  std::array<double, 2> dir1{1.0, 0.0};
  std::array<double, 2> dir2{-0.5, std::numbers::sqrt3 / 2.0};
  double phi1 = 0.0; // SS_MIXED directions (sin phi, cos phi)
  double phi2 = std::numbers::pi / 3.0;
  int m = 1; // EE_DEGENERATE exponent
  std::array<double, 5> c{1.0, 1.0, 1.0, 2.0, 1.0}; // EE_DEGENERATE C1..C5
};

struct Profiles {
  std::optional<ProfileFn> phi;
  std::optional<ProfileFn> F;
  std::optional<ProfileFn> G;
  std::optional<ProfileFn> h1;
  std::optional<ProfileFn> h2;
  std::optional<ProfileFn> lam21; // ES_RANK2, a function of v; default 1
};

// Immutable once built by make_solution. The solver unknowns are the Riemann
// invariants except for ES_RANK2, which solves for (r2, s).
struct SolutionDescriptor {
  Family family = Family::E_GENERIC;
  Constants c;
  Profiles p;
  PhysParams params;
  std::string label;

  int rank() const;
  ImplicitSystem system() const;
  State state(const RVec& root) const;
  RVec invariants(const RVec& root, const Point& pt) const;
  Point seed_point() const { return {}; }
  RVec seed_root() const { return {0.0, 0.0}; }
};

SolutionDescriptor make_solution(Family family, const Constants& c, const Profiles& p,
                                 const PhysParams& params);

struct EvalOptions {
  double tol = 1e-12;
  int max_iter = 50;
  double catastrophe_tol = 1e-8;
  ContinuationOptions continuation{};
};

struct Evaluation {
  State state;
  SolveReport report;
  RVec invariants{};
};

// Follows the seed-connected branch from the analytic seed point to pt.
Evaluation eval_sww(const SolutionDescriptor& d, const Point& pt, const EvalOptions& opt = {});
Evaluation eval_sww(const SolutionDescriptor& d, const Point& pt, double tol);

// Generic driver shared with the rotating lift: `sys` is solved along the
// segment from (seed_pt, seed_root) and the root mapped through d.state.
Evaluation evaluate_along(const SolutionDescriptor& d, const ImplicitSystem& sys,
                          const Point& seed_pt, const RVec& seed_root, const Point& pt,
                          const EvalOptions& opt);

struct GridCell {
  Point pt;
  State state;
  RVec invariants{};
  bool converged = false;
  bool catastrophe = false;
  bool singular = false;
  SolveReport report;
};

struct GridField {
  Grid grid;
  int rank = 1;
  std::vector<GridCell> cells;

  std::size_t failures() const;
  std::size_t singular_cells() const;
};

GridField eval_grid(const SolutionDescriptor& d, const Grid& grid, const EvalOptions& opt = {},
                    SweepOptions sweep = {});

// Fills cells from sweep reports; shared with the rotating lift.
GridField assemble_field(const SolutionDescriptor& d, const Grid& grid,
                         const std::vector<SolveReport>& reps,
                         const std::function<Point(const Point&)>& to_sww,
                         const std::function<State(const Point&, const State&)>& lift);

struct Table5Options {
  double h0 = 2.0;
  double u0 = 0.0;
  double v0 = 0.0;
  double A1 = 0.5;
  double B1 = 1.0;
  double A2 = 0.7;
  double B2 = 2.0;
};

// A nonconstant instance of each family, used by the suites and the CLI when
// no profiles are configured.
SolutionDescriptor representative(Family f, const PhysParams& params = {});

// Rows 1-5 of the bounded rank-2 examples.
SolutionDescriptor table5(int row, const PhysParams& params, const Table5Options& o = {});
const char* table5_label(int row);

} // namespace swwlab
