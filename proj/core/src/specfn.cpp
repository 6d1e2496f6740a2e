#include "swwlab/specfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "swwlab/errors.hpp"

namespace swwlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesLimit = 1.5;

void fresnel_series(double x, double& s, double& c) {
  const double t = 0.5 * kPi * x * x;
  // term_n = (-1)^n t^(2n) / (2n)! for C, t^(2n+1)/(2n+1)! for S
  double fact = 1.0; // t^k / k!
  double sum_c = 0.0, sum_s = 0.0;
  for (int k = 0; k < 80; ++k) {
    const double odd = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    const double term = odd * fact / (2 * k + 1);
    if (k % 2 == 0)
      sum_c += term;
    else
      sum_s += term;
    if (k > 4 && std::abs(term) < 1e-18 * (std::abs(sum_c) + std::abs(sum_s)))
      break;
    fact *= t / (k + 1);
  }
  c = x * sum_c;
  s = x * sum_s;
}

void fresnel_cf(double ax, double& s, double& c) {
  using cplx = std::complex<double>;
  const double pix2 = kPi * ax * ax;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  cplx b(1.0, -pix2);
  cplx cc(1.0 / tiny, 0.0);
  cplx d = 1.0 / b;
  cplx h = d;
  int n = -1;
  for (int k = 2; k <= 500; ++k) {
    n += 2;
    const double a = -static_cast<double>(n) * (n + 1);
    b += 4.0;
    d = 1.0 / (a * d + b);
    cc = b + a / cc;
    const cplx del = cc * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16)
      break;
  }
  h *= cplx(ax, -ax);
  const cplx cs = cplx(0.5, 0.5) * (1.0 - cplx(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
  c = cs.real();
  s = cs.imag();
}

// Laurent coefficients c_2..c_9 of P(z) = z^-2 + sum c_k z^(2k-2).
std::array<double, 10> laurent(const WeierstrassInvariants& inv) {
  std::array<double, 10> c{};
  c[2] = inv.g2 / 20.0;
  c[3] = inv.g3 / 28.0;
  for (int k = 4; k <= 9; ++k) {
    double acc = 0.0;
    for (int m = 2; m <= k - 2; ++m)
      acc += c[m] * c[k - m];
    c[k] = 3.0 * acc / ((2.0 * k + 1.0) * (k - 3.0));
  }
  return c;
}

double scale_of(const WeierstrassInvariants& inv) {
  return std::max({1.0, std::pow(std::abs(inv.g2), 0.25), std::pow(std::abs(inv.g3), 1.0 / 6.0)});
}

constexpr double kReduced = 0.35;

} // namespace

void fresnel(double x, double& s, double& c) {
  const double ax = std::abs(x);
  if (ax <= kSeriesLimit)
    fresnel_series(ax, s, c);
  else
    fresnel_cf(ax, s, c);
  if (x < 0.0) {
    s = -s;
    c = -c;
  }
}

double fresnel_s(double x) {
  double s, c;
  fresnel(x, s, c);
  return s;
}

double fresnel_c(double x) {
  double s, c;
  fresnel(x, s, c);
  return c;
}

bool WeierstrassInvariants::degenerate(double rel_tol) const {
  const double a = std::abs(g2 * g2 * g2), b = std::abs(27.0 * g3 * g3);
  return std::abs(discriminant()) <= rel_tol * std::max({a, b, 1e-300});
}

namespace detail {

PValue weierstrass_duplicate(PValue w, double g2) {
  const double P = w.p, P1 = w.dp;
  const double P2 = 6.0 * P * P - 0.5 * g2;
  const double q = P2 / P1;
  PValue out;
  out.p = -2.0 * P + 0.25 * q * q;
  out.dp = -P1 + 3.0 * P * q - 0.25 * q * q * q;
  return out;
}

PValue weierstrass_pair(double z, const WeierstrassInvariants& inv) {
  if (!std::isfinite(z))
    throw DomainError("weierstrass_p: non-finite argument");
  if (std::abs(z) < 1e-8)
    throw PoleProximity("weierstrass_p: |z| < 1e-8");
  const double sc = scale_of(inv);
  int n = 0;
  double w = z;
  while (std::abs(w) * sc > kReduced) {
    w *= 0.5;
    ++n;
  }
  const auto c = laurent(inv);
  const double w2 = w * w;
  // tail = sum c_k w^(2k-2), dtail = sum (2k-2) c_k w^(2k-3)
  double tail = 0.0, dtail = 0.0;
  for (int k = 9; k >= 2; --k) {
    tail = tail * w2 + c[k];
    dtail = dtail * w2 + (2.0 * k - 2.0) * c[k];
  }
  PValue v;
  v.p = 1.0 / w2 + tail * w2;
  v.dp = -2.0 / (w2 * w) + dtail * w;
  for (int i = 0; i < n; ++i)
    v = weierstrass_duplicate(v, inv.g2);
  return v;
}

} // namespace detail

double weierstrass_p(double z, const WeierstrassInvariants& inv) {
  return detail::weierstrass_pair(z, inv).p;
}

double weierstrass_p_recip(double z, const WeierstrassInvariants& inv) {
  const double sc = scale_of(inv);
  if (std::abs(z) * sc <= kReduced) {
    const auto c = laurent(inv);
    const double z2 = z * z;
    double tail = 0.0;
    for (int k = 9; k >= 2; --k)
      tail = tail * z2 + c[k];
    return z2 / (1.0 + tail * z2 * z2);
  }
  const double p = weierstrass_p(z, inv);
  if (!std::isfinite(p))
    return 0.0;
  return 1.0 / p;
}

double weierstrass_real_minimum(const WeierstrassInvariants& inv) {
  const auto f = [&](double x) { return 4.0 * x * x * x - inv.g2 * x - inv.g3; };
  const auto df = [&](double x) { return 12.0 * x * x - inv.g2; };
  // start right of every root; Newton then decreases monotonically onto e1
  double x = 1.0 + std::max(std::abs(inv.g2), std::abs(inv.g3));
  for (int i = 0; i < 200; ++i) {
    const double d = df(x);
    if (d == 0.0)
      break;
    const double step = f(x) / d;
    x -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x)))
      break;
  }
  return x;
}

} // namespace swwlab
