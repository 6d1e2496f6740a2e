#include "swwlab/profile.hpp"

#include <algorithm>
#include <cmath>

#include "swwlab/errors.hpp"

namespace swwlab {
namespace {

double sech2(double x) {
  const double c = std::cosh(x);
  return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), d(n - 1), m(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    d[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0.0)
      continue;
    const double w1 = 2.0 * h[k] + h[k - 1], w2 = h[k] + 2.0 * h[k - 1];
    m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
  }
  const auto end = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0)
      s = 0.0;
    else if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0))
      s = 3.0 * d0;
    return s;
  };
  m[0] = end(h[0], h[1], d[0], d[1]);
  m[n - 1] = end(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

} // namespace

ProfileFn ProfileFn::constant(double c) {
  ProfileFn p;
  p.kind = ProfileKind::Const;
  p.A = c;
  return p;
}

ProfileFn ProfileFn::of(ProfileKind kind, double A, double B, double offset, double scale) {
  ProfileFn p;
  p.kind = kind;
  p.A = A;
  p.B = B;
  p.offset = offset;
  p.scale = scale;
  return p;
}

ProfileFn ProfileFn::table(std::vector<double> xs, std::vector<double> ys, Interp interp) {
  ProfileFn p;
  p.kind = ProfileKind::CustomTable;
  p.xs = std::move(xs);
  p.ys = std::move(ys);
  p.interp = interp;
  validate(p);
  if (interp == Interp::Pchip)
    p.slopes = pchip_slopes(p.xs, p.ys);
  return p;
}

WeierstrassInvariants ProfileFn::invariants() const {
  return {4.0 / 3.0, 8.0 / 27.0 + 4.0 / 3.0 * A * A * A * A};
}

double ProfileFn::kernel(double rho) const {
  switch (kind) {
  case ProfileKind::Const:
    return 1.0;
  case ProfileKind::TanhSq: {
    const double t = std::tanh(rho);
    return t * t;
  }
  case ProfileKind::SechSq:
    return sech2(rho);
  case ProfileKind::Kink:
    return rho / std::sqrt(1.0 + B * rho * rho);
  case ProfileKind::WeierstrassRecip:
    return weierstrass_p_recip(rho, invariants());
  case ProfileKind::Sin:
    return std::sin(rho);
  case ProfileKind::CustomTable: {
    const std::size_t n = xs.size();
    if (interp == Interp::Linear || slopes.empty()) {
      std::size_t k = std::upper_bound(xs.begin(), xs.end(), rho) - xs.begin();
      k = std::clamp<std::size_t>(k, 1, n - 1) - 1;
      const double s = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
      return ys[k] + s * (rho - xs[k]);
    }
    if (rho <= xs.front())
      return ys.front() + slopes.front() * (rho - xs.front());
    if (rho >= xs.back())
      return ys.back() + slopes.back() * (rho - xs.back());
    const std::size_t k = std::upper_bound(xs.begin(), xs.end(), rho) - xs.begin() - 1;
    const double h = xs[k + 1] - xs[k];
    const double s = (rho - xs[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * ys[k] + (s3 - 2 * s2 + s) * h * slopes[k] +
           (-2 * s3 + 3 * s2) * ys[k + 1] + (s3 - s2) * h * slopes[k + 1];
  }
  }
  return 0.0;
}

double ProfileFn::kernel_derivative(double rho) const {
  switch (kind) {
  case ProfileKind::Const:
    return 0.0;
  case ProfileKind::TanhSq: {
    const double t = std::tanh(rho);
    return 2.0 * t * (1.0 - t * t);
  }
  case ProfileKind::SechSq:
    return -2.0 * std::tanh(rho) * sech2(rho);
  case ProfileKind::Kink:
    return std::pow(1.0 + B * rho * rho, -1.5);
  case ProfileKind::Sin:
    return std::cos(rho);
  case ProfileKind::CustomTable:
  case ProfileKind::WeierstrassRecip:
    break;
  }
  const double h = 1e-4 * std::max(1.0, std::abs(rho));
  return (-kernel(rho + 2 * h) + 8 * kernel(rho + h) - 8 * kernel(rho - h) + kernel(rho - 2 * h)) /
         (12 * h);
}

double ProfileFn::operator()(double r) const { return offset + A * kernel(scale * r); }

double ProfileFn::derivative(double r) const { return A * scale * kernel_derivative(scale * r); }

void validate(const ProfileFn& p) {
  if (!std::isfinite(p.A) || !std::isfinite(p.B) || !std::isfinite(p.offset) ||
      !std::isfinite(p.scale))
    throw DomainError("profile parameters must be finite");
  if (p.kind == ProfileKind::Kink && p.B < 0.0)
    throw DomainError("kink profile needs B >= 0");
  if (p.kind == ProfileKind::WeierstrassRecip) {
    const double e1 = weierstrass_real_minimum(p.invariants());
    if (!(e1 > 0.0))
      throw DomainError("weierstrass_recip: P has real zeros for these invariants (min " +
                        std::to_string(e1) + ")");
  }
  if (p.kind == ProfileKind::CustomTable) {
    if (p.xs.size() < 2 || p.xs.size() != p.ys.size())
      throw DomainError("custom table needs >= 2 knots with matching values");
    for (std::size_t k = 0; k < p.xs.size(); ++k) {
      if (!std::isfinite(p.xs[k]) || !std::isfinite(p.ys[k]))
        throw DomainError("custom table knots must be finite");
      if (k > 0 && !(p.xs[k] > p.xs[k - 1]))
        throw DomainError("custom table knots must be strictly increasing");
    }
  }
}

const char* to_string(ProfileKind k) {
  switch (k) {
  case ProfileKind::Const: return "const";
  case ProfileKind::TanhSq: return "tanh_sq";
  case ProfileKind::SechSq: return "sech_sq";
  case ProfileKind::Kink: return "kink";
  case ProfileKind::WeierstrassRecip: return "weierstrass_recip";
  case ProfileKind::Sin: return "sin";
  case ProfileKind::CustomTable: return "custom_table";
  }
  return "?";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  for (auto k : {ProfileKind::Const, ProfileKind::TanhSq, ProfileKind::SechSq, ProfileKind::Kink,
                 ProfileKind::WeierstrassRecip, ProfileKind::Sin, ProfileKind::CustomTable})
    if (s == to_string(k))
      return k;
  throw ConfigError("unknown profile kind '" + s + "'");
}

double c1_defect(const ProfileFn& p) {
  if (p.kind != ProfileKind::CustomTable)
    return 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < p.xs.size(); ++i) {
    // one-sided secants; the stencil in derivative() would smear a kink
    const double x = p.xs[i] / p.scale;
    const double e = 1e-8 * std::max(1.0, std::abs(x));
    const double right = (p(x + e) - p(x)) / e, left = (p(x) - p(x - e)) / e;
    worst = std::max(worst, std::abs(right - left));
  }
  return worst;
}

} // namespace swwlab
