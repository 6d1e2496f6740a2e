#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-15) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > tol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// composite 8-point Gauss-Legendre in long double
inline long double integrate(const std::function<long double(long double)>& f, long double a,
                             long double b, int panels) {
  static const long double xg[4] = {0.1834346424956498049394761423601840L,
                                    0.5255324099163289858177390491892463L,
                                    0.7966664774136267395915539364758304L,
                                    0.9602898564975362316835608685694730L};
  static const long double wg[4] = {0.3626837833783619829651504492771957L,
                                    0.3137066458778872873379622019866013L,
                                    0.2223810344533744705443559944262409L,
                                    0.1012285362903762591525313543099622L};
  const long double h = (b - a) / panels;
  long double sum = 0;
  for (int p = 0; p < panels; ++p) {
    const long double c = a + (p + 0.5L) * h, r = 0.5L * h;
    for (int k = 0; k < 4; ++k)
      sum += wg[k] * r * (f(c - r * xg[k]) + f(c + r * xg[k]));
  }
  return sum;
}

inline double fresnel_s(double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  return static_cast<double>(integrate(
      [pi](long double t) { return std::sin(pi * t * t / 2); }, 0, x,
      std::max(64, static_cast<int>(std::abs(x) * 400))));
}

inline double fresnel_c(double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  return static_cast<double>(integrate(
      [pi](long double t) { return std::cos(pi * t * t / 2); }, 0, x,
      std::max(64, static_cast<int>(std::abs(x) * 400))));
}

// Maclaurin series, long double, 40 terms
inline double fresnel_s_series(double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double sum = 0, z = pi / 2 * x * x, term = 1, fact = 1;
  for (int n = 0; n < 40; ++n) {
    // (-1)^n z^(2n+1) / (2n+1)! * x / (4n+3)
    if (n > 0)
      fact *= (2 * n) * (2 * n + 1);
    term = std::pow(z, 2 * n + 1) / fact;
    sum += (n % 2 ? -1 : 1) * term * x / (4 * n + 3);
  }
  return static_cast<double>(sum);
}

inline double fresnel_c_series(double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double sum = 0, z = pi / 2 * x * x, fact = 1;
  for (int n = 0; n < 40; ++n) {
    if (n > 0)
      fact *= (2 * n - 1) * (2 * n);
    sum += (n % 2 ? -1 : 1) * std::pow(z, 2 * n) / fact * x / (4 * n + 1);
  }
  return static_cast<double>(sum);
}

} // namespace oracle
