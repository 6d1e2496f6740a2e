#pragma once

#include <string>
#include <vector>

#include "swwlab/specfn.hpp"

namespace swwlab {

enum class ProfileKind { Const, TanhSq, SechSq, Kink, WeierstrassRecip, Sin, CustomTable };
enum class Interp { Pchip, Linear };

// value(r) = offset + A * kernel(scale * r)
//   const               1
//   tanh_sq, sech_sq    tanh^2, sech^2
//   kink                rho / sqrt(1 + B rho^2)      (B = 0 is linear)
//   weierstrass_recip   1 / P(rho; 4/3, 8/27 + 4/3 A^4)
//   sin                 sin rho
//   custom_table        monotone cubic (or linear) through the knots
struct ProfileFn {
  ProfileKind kind = ProfileKind::Const;
  double A = 1.0;
  double B = 0.0;
  double offset = 0.0;
  double scale = 1.0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> slopes;
  Interp interp = Interp::Pchip;

  double operator()(double r) const;
  double derivative(double r) const;
  double kernel(double rho) const;
  double kernel_derivative(double rho) const;
  WeierstrassInvariants invariants() const; // weierstrass_recip only

  static ProfileFn constant(double c);
  static ProfileFn of(ProfileKind kind, double A = 1.0, double B = 0.0, double offset = 0.0,
                      double scale = 1.0);
  static ProfileFn table(std::vector<double> xs, std::vector<double> ys,
                         Interp interp = Interp::Pchip);
};

// Checks parameter ranges. For weierstrass_recip also rejects invariants whose
// P attains zero on the real axis (the reciprocal would blow up).
void validate(const ProfileFn& p);

// Largest jump of the derivative across a table knot (0 for smooth kinds).
double c1_defect(const ProfileFn& p);

const char* to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

} // namespace swwlab
