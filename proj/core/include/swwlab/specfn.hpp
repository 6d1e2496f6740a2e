#pragma once

namespace swwlab {

// Fresnel integrals with the pi t^2 / 2 normalisation.
double fresnel_s(double x);
double fresnel_c(double x);
void fresnel(double x, double& s, double& c);

struct WeierstrassInvariants {
  double g2 = 0.0;
  double g3 = 0.0;

  double discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
  bool degenerate(double rel_tol = 1e-12) const;
};

// Real-argument P(z; g2, g3). Laurent series through z^16 once |z| * scale <= 0.35,
// scale = max(1, |g2|^(1/4), |g3|^(1/6)); larger arguments are halved that many times
// and rebuilt with the duplication formula. Throws PoleProximity for |z| < 1e-8.
double weierstrass_p(double z, const WeierstrassInvariants& inv);

// 1/P(z), continuous through the lattice points (returns 0 there).
double weierstrass_p_recip(double z, const WeierstrassInvariants& inv);

// Largest real root e1 of 4x^3 - g2 x - g3. On the real axis P >= e1.
double weierstrass_real_minimum(const WeierstrassInvariants& inv);

namespace detail {

struct PValue {
  double p;
  double dp;
};

PValue weierstrass_pair(double z, const WeierstrassInvariants& inv);
PValue weierstrass_duplicate(PValue at_z, double g2);

} // namespace detail
} // namespace swwlab
