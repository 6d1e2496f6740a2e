#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "swwlab/errors.hpp"
#include "swwlab/symmetry.hpp"
#include "swwlab/verify.hpp"

using namespace swwlab;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::numbers::sqrt3;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v)
    m = std::max(m, std::abs(x));
  return m;
}

Field anchored_at(const SolutionDescriptor& d, const Point& pt) {
  const auto e = eval_sww(d, pt);
  REQUIRE(e.report.converged);
  return anchored_field(d, e.report.root, 1e-14);
}

SolutionDescriptor linear_acoustic() {
  Constants c;
  c.dir1 = {1, 0};
  Profiles p;
  p.phi = ProfileFn::of(ProfileKind::Kink, 0.1, 0.0);
  return make_solution(Family::S_SIMPLE, c, p, {1.0, 0.0});
}

} // namespace

TEST_SUITE("verify") {

TEST_CASE("constant field has no residual") {
  const Field f = [](const Point&) { return State{0.3, -0.2, 1.4}; };
  for (auto sys : {SystemKind::SWW}) {
    const auto r = pde_residual(f, {0.1, 0.2, 0.3}, {1.0, 0.0}, sys, 1e-3);
    CHECK(r.max_abs() <= 1e-13);
  }
  CHECK(trace_form_residual(f, {0, 0, 0}, {9.81, 0.0}) <= 1e-13);
  CHECK(jacobian_rank(f, {0, 0, 0}).rank == 0);
}

TEST_CASE("acoustic simple wave with a linear profile") {
  // r = x - 3 (0.1 r) t  =>  r = x / (1 + 0.3 t), u = 0.2 r, h = (0.1 r)^2
  const auto d = linear_acoustic();
  const Point pt{0.1, 0.3, 0.0};
  const auto e = eval_sww(d, pt);
  REQUIRE(e.report.converged);
  const double r = pt.x / (1 + 0.3 * pt.t);
  CHECK(e.state.u == doctest::Approx(0.2 * r).epsilon(1e-12));
  CHECK(e.state.h == doctest::Approx(0.01 * r * r).epsilon(1e-12));
  const auto res = pde_residual(anchored_field(d, e.report.root, 1e-14), pt, d.params,
                                SystemKind::SWW, 1e-3);
  CHECK(res.max_abs() <= 1e-7);

  const Field exact = [](const Point& q) {
    const double rr = q.x / (1 + 0.3 * q.t);
    return State{0.2 * rr, 0.0, 0.01 * rr * rr};
  };
  CHECK(pde_residual(exact, pt, d.params, SystemKind::SWW, 1e-3).max_abs() <= 1e-10);
}

TEST_CASE("lift of a constant state solves the rotating system") {
  const double w = 1.0, u0 = 0.3, v0 = -0.4, h0 = 1.2;
  // explicit composition: the constant SWW state does not depend on the mapped point
  const Field f = [&](const Point& q) {
    const double ct = std::cos(w * q.t) / std::sin(w * q.t);
    const double cs = 1.0 / std::sin(w * q.t);
    return State{-u0 * ct - v0 + w * (q.y + q.x * ct), u0 - v0 * ct - w * (q.x - q.y * ct),
                 h0 * cs * cs};
  };
  const Point pt{kPi / 4 + 0.1, 0.5, 0.2};
  CHECK(pde_residual(f, pt, {1.0, w}, SystemKind::RSWW, 1e-3).max_abs() <= 1e-7);
  // the same field is not a solution of the non-rotating system
  CHECK(pde_residual(f, pt, {1.0, w}, SystemKind::SWW, 1e-3).max_abs() > 0.1);
}

TEST_CASE("jacobian rank") {
  const auto ss = table5(3, {1.0, 0.0});
  const Point pt{0.05, 0.3, -0.2};
  const auto r2 = jacobian_rank(anchored_at(ss, pt), pt);
  CHECK(r2.rank == 2);
  CHECK(r2.singular_values[1] / r2.singular_values[0] > 1e-3);

  const auto ee = representative(Family::EE_DEGENERATE);
  const Point q{0.05, 0.2, 0.1};
  CHECK(jacobian_rank(anchored_at(ee, q), q).rank == 1);

  const auto e1 = representative(Family::E_GENERIC);
  CHECK(jacobian_rank(anchored_at(e1, q), q).rank == 1);
}

TEST_CASE("trace conditions hold for entropic waves and fail when broken") {
  const auto d = representative(Family::E_GENERIC);
  const auto a = make_ansatz(d);
  REQUIRE(a);
  for (double r : {-1.0, -0.3, 0.2, 0.9})
    CHECK(max_abs(trace_condition_residual(*a, {r, 0}, d.params)) <= 1e-8);

  SolutionAnsatz broken = *a;
  broken.f = [f = a->f](const RVec& r) {
    State s = f(r);
    s.h += r[0];
    return s;
  };
  const double lam1 = std::abs(a->lambdas(a->f({0.2, 0}))[0][1]);
  CHECK(max_abs(trace_condition_residual(broken, {0.2, 0}, d.params)) >= 0.1 * d.params.g * lam1);
}

TEST_CASE("trace conditions for every ansatz family") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> R(-0.5, 0.5);
  for (auto f : {Family::E_GENERIC, Family::E_PERIODIC, Family::E_HYPERBOLIC, Family::S_SIMPLE,
                 Family::S_ROTATING, Family::S_FRESNEL, Family::ES_RANK2, Family::SS_RANK2,
                 Family::SS_MIXED}) {
    const auto d = representative(f);
    const auto a = make_ansatz(d);
    REQUIRE(a);
    CAPTURE(to_string(f));
    for (int i = 0; i < 10; ++i) {
      const RVec r{R(rng), R(rng)};
      const auto res = trace_condition_residual(*a, r, d.params);
      CHECK(res.size() == (a->k == 1 ? 3u : 12u));
      CHECK(max_abs(res) <= 1e-6);
    }
  }
  CHECK_FALSE(make_ansatz(representative(Family::EE_DEGENERATE)));
}

TEST_CASE("differential constraints") {
  for (auto f : {Family::E_GENERIC, Family::S_SIMPLE, Family::S_ROTATING}) {
    const auto d = representative(f);
    const auto a = make_ansatz(d);
    REQUIRE(a);
    const Point pt{0.1, 0.3, -0.2};
    const auto field = anchored_at(d, pt);
    CAPTURE(to_string(f));
    for (const auto& xi : family_fields(d, *a)) {
      const auto rep = dc_check(*a, xi, field, pt);
      CHECK(rep.annihilation <= 1e-8);
      CHECK(rep.invariance <= 1e-8);
    }
  }
  // u depends on x but the entropic field has a d_x component
  const auto d = representative(Family::E_GENERIC);
  const auto a = make_ansatz(d);
  const Field bad = [](const Point& q) { return State{0.2 + 0.5 * q.x, 0.0, 1.0}; };
  const auto xi = family_fields(d, *a).front();
  CHECK(dc_check(*a, xi, bad, {0, 0.1, 0}).invariance >= 0.01);
}

TEST_CASE("trace form") {
  const Field f = [](const Point& q) { return State{q.x, q.y, 1.0}; };
  CHECK(trace_form_residual(f, {0.2, 0.4, -0.1}, {1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-9));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 100; ++i) {
    double c[9];
    for (double& x : c)
      x = U(rng);
    const Field g = [=](const Point& q) {
      return State{c[0] * std::sin(q.x + c[1] * q.t) + c[2] * q.y,
                   c[3] * std::cos(q.y - c[4] * q.x) + c[5] * q.t,
                   2.0 + c[6] * std::sin(q.x * q.y) + c[7] * std::exp(c[8] * q.t)};
    };
    const Point pt{U(rng), U(rng), U(rng)};
    const PhysParams p{9.81, 0.0};
    CHECK(std::abs(trace_form_residual(g, pt, p) -
                   pde_residual(g, pt, p, SystemKind::SWW, 1e-3).max_abs()) <= 1e-9);
  }
}

TEST_CASE("fourth-order differences") {
  const Field f = [](const Point& q) {
    return State{std::sin(2 * q.x) * std::exp(q.t), std::cos(q.y + q.t), 1.0 + q.x * q.x * q.y};
  };
  const Point pt{0.2, 0.4, -0.3};
  Mat3 exact;
  const double e = std::exp(pt.t);
  exact << std::sin(2 * pt.x) * e, 2 * std::cos(2 * pt.x) * e, 0,
      -std::sin(pt.y + pt.t), 0, -std::sin(pt.y + pt.t),
      0, 2 * pt.x * pt.y, pt.x * pt.x;
  const double e1 = (spacetime_jacobian(f, pt, 0.1, false) - exact).cwiseAbs().maxCoeff();
  const double e2 = (spacetime_jacobian(f, pt, 0.05, false) - exact).cwiseAbs().maxCoeff();
  CHECK(e1 / e2 >= 8.0);
  const double er = (spacetime_jacobian(f, pt, 0.1, true) - exact).cwiseAbs().maxCoeff();
  CHECK(er < e2);
}

TEST_CASE("stencil failures are reported") {
  const Field f = [](const Point& q) {
    if (q.x > 0.0005)
      throw DomainError("outside");
    return State{0, 0, 1};
  };
  CHECK_THROWS_AS(pde_residual(f, {0, 0, 0}, {1.0, 0.0}, SystemKind::SWW, 1e-3), StencilFailure);
}

TEST_CASE("gamma identity") {
  const auto a = gamma_identity_residual(0.0);
  CHECK(std::abs(a.identity) <= 1e-12);
  CHECK(a.gamma1 == doctest::Approx(-2 * kSqrt3));
  CHECK(a.gamma2 == doctest::Approx(2.0));
  const auto b = gamma_identity_residual(1.0);
  CHECK(std::abs(b.identity) <= 1e-12);
  CHECK(b.gamma1 == doctest::Approx(std::sqrt(2.0) * (1 - kSqrt3)));
  CHECK(b.gamma2 == doctest::Approx(std::sqrt(2.0) * (kSqrt3 + 1)));
  CHECK_THROWS_AS(gamma_identity_residual(kSqrt3), DomainSingular);
}

TEST_CASE("residual suites") {
  SuiteOptions o;
  o.samples = 20;
  const auto r = residual_suite(representative(Family::S_ROTATING), o);
  CHECK(r.passed(1e-6, 20));
  o.system = SystemKind::RSWW;
  o.omega = 0.5;
  const auto q = residual_suite(representative(Family::SS_MIXED, {1.0, 0.5}), o);
  CHECK(q.passed(1e-6, 20));
}

}
