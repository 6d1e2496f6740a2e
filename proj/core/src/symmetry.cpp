#include "swwlab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/Dense>

#include "swwlab/errors.hpp"

namespace swwlab {
namespace {

Vec6 axpy(const Vec6& a, double s, const Vec6& b) {
  Vec6 r;
  for (int i = 0; i < 6; ++i)
    r[i] = a[i] + s * b[i];
  return r;
}

Vec6 scaled(double s, const Vec6& a) {
  Vec6 r;
  for (int i = 0; i < 6; ++i)
    r[i] = s * a[i];
  return r;
}

// J(f)(pt) * w with 4th-order differences, per-coordinate steps
Vec6 directional(const std::function<Vec6(const Vec6&)>& f, const Vec6& pt, const Vec6& w) {
  Vec6 out{};
  for (int j = 0; j < 6; ++j) {
    if (w[j] == 0.0)
      continue;
    const double h = 1e-4 * std::max(1.0, std::abs(pt[j]));
    Vec6 q = pt;
    q[j] = pt[j] + 2 * h;
    const Vec6 p2 = f(q);
    q[j] = pt[j] + h;
    const Vec6 p1 = f(q);
    q[j] = pt[j] - h;
    const Vec6 m1 = f(q);
    q[j] = pt[j] - 2 * h;
    const Vec6 m2 = f(q);
    for (int i = 0; i < 6; ++i)
      out[i] += w[j] * (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h);
  }
  return out;
}

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

const char* to_string(Gen id) {
  static const char* names[] = {"P0", "P1", "P2", "L", "G1", "G2", "D", "Z1", "Z2"};
  return names[static_cast<int>(id)];
}

Vec6 generator(Gen id, const Vec6& pt, double w) {
  const auto [t, x, y, u, v, h] = pt;
  const double c = std::cos(2 * w * t), s = std::sin(2 * w * t);
  switch (id) {
  case Gen::P0:
    return {1, 0, 0, 0, 0, 0};
  case Gen::P1:
    return {0, 1, 0, 0, 0, 0};
  case Gen::P2:
    return {0, 0, 1, 0, 0, 0};
  case Gen::L:
    return {0, y, -x, v, -u, 0};
  case Gen::G1:
    return {0, -c / (2 * w), s / (2 * w), s, c, 0};
  case Gen::G2:
    return {0, s / (2 * w), c / (2 * w), c, -s, 0};
  case Gen::D:
    return {0, x, y, u, v, 2 * h};
  case Gen::Z1:
    return {s,
            w * (x * c + y * s),
            w * (y * c - x * s),
            w * ((2 * w * y - u) * c - (2 * w * x - v) * s),
            -w * ((2 * w * x + v) * c + (2 * w * y + u) * s),
            -2 * w * h * c};
  case Gen::Z2:
    return {c,
            w * (y * c - x * s),
            -w * (x * c + y * s),
            -w * ((2 * w * y - u) * s + (2 * w * x - v) * c),
            w * ((2 * w * x + v) * s - (2 * w * y + u) * c),
            2 * w * h * s};
  }
  return {};
}

Vec6 y_basis(int i, const Vec6& pt, double w) {
  const auto g = [&](Gen id) { return generator(id, pt, w); };
  switch (i) {
  case 1:
    return axpy(g(Gen::P2), -2 * w, g(Gen::G2));
  case 2:
    return scaled(-1.0, axpy(g(Gen::P1), 2 * w, g(Gen::G1)));
  case 3:
    return axpy(g(Gen::P1), -2 * w, g(Gen::G1));
  case 4:
    return axpy(g(Gen::P2), 2 * w, g(Gen::G2));
  case 5:
    return scaled(-1.0, g(Gen::L));
  case 6:
    return g(Gen::D);
  case 7: // +wL: the sign that closes the table as published
    return axpy(axpy(g(Gen::P0), w, g(Gen::L)), -1.0, g(Gen::Z2));
  case 8:
    return axpy(axpy(g(Gen::P0), w, g(Gen::L)), 1.0, g(Gen::Z2));
  case 9:
    return scaled(-1.0 / w, g(Gen::Z1));
  default:
    throw DomainError("Y basis index must be 1..9");
  }
}

GeneratorField GeneratorField::of(Gen g, double omega) {
  return {to_string(g), omega, [g, omega](const Vec6& p) { return generator(g, p, omega); }};
}

GeneratorField GeneratorField::y(int i, double omega) {
  if (i < 1 || i > 9)
    throw DomainError("Y basis index must be 1..9");
  return {"Y" + std::to_string(i), omega, [i, omega](const Vec6& p) { return y_basis(i, p, omega); }};
}

Vec6 lie_bracket(const GeneratorField& a, const GeneratorField& b, const Vec6& pt) {
  const Vec6 da = directional(a.coeffs, pt, b(pt));
  const Vec6 db = directional(b.coeffs, pt, a(pt));
  Vec6 r;
  for (int i = 0; i < 6; ++i)
    r[i] = db[i] - da[i];
  return r;
}

GeneratorField bracket_field(const GeneratorField& a, const GeneratorField& b) {
  return {"[" + a.id + "," + b.id + "]", a.omega,
          [a, b](const Vec6& p) { return lie_bracket(a, b, p); }};
}

std::vector<Vec6> random_samples(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec6> out(static_cast<std::size_t>(std::max(0, n)));
  for (auto& p : out) {
    for (auto& c : p)
      c = 2.0 * u01(rng) - 1.0;
    p[5] += 2.0; // keep h positive
  }
  return out;
}

StructureTable structure_constants(double omega, const std::vector<Vec6>& samples) {
  if (!(omega > 0.0))
    throw DomainError("omega must be positive");
  const int n = static_cast<int>(samples.size());
  if (n < 6)
    throw DegenerateSamples("need at least 6 sample points, got " + std::to_string(n));
  std::vector<GeneratorField> Y;
  for (int i = 1; i <= 9; ++i)
    Y.push_back(GeneratorField::y(i, omega));

  Eigen::MatrixXd M(6 * n, 9);
  for (int s = 0; s < n; ++s)
    for (int k = 0; k < 9; ++k) {
      const Vec6 c = Y[k](samples[s]);
      for (int r = 0; r < 6; ++r)
        M(6 * s + r, k) = c[r];
    }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto sv = svd.singularValues();
  if (qr.rank() < 9 || sv[8] < 1e-10 * sv[0])
    throw DegenerateSamples("sample points do not separate the nine basis fields");

  StructureTable t;
  t.omega = omega;
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) {
      Eigen::VectorXd b(6 * n);
      for (int s = 0; s < n; ++s) {
        const Vec6 c = lie_bracket(Y[j], Y[i], samples[s]);
        for (int r = 0; r < 6; ++r)
          b[6 * s + r] = c[r];
      }
      const Eigen::VectorXd x = qr.solve(b);
      t.max_expansion_residual =
          std::max(t.max_expansion_residual, (M * x - b).cwiseAbs().maxCoeff());
      for (int k = 0; k < 9; ++k) {
        t.entries[i][j][k] = x[k];
        t.entries[j][i][k] = -x[k];
      }
    }
  return t;
}

StructureTable reference_table(double w) {
  StructureTable t;
  t.omega = w;
  const auto set = [&t](int i, int j, int k, double c) {
    t.entries[i - 1][j - 1][k - 1] = c;
    t.entries[j - 1][i - 1][k - 1] = -c;
  };
  set(1, 5, 2, -1);
  set(1, 6, 1, -1);
  set(1, 8, 3, -2 * w);
  set(1, 9, 1, -1);
  set(2, 5, 1, 1);
  set(2, 6, 2, -1);
  set(2, 8, 4, -2 * w);
  set(2, 9, 2, -1);
  set(3, 5, 4, -1);
  set(3, 6, 3, -1);
  set(3, 7, 1, 2 * w);
  set(3, 9, 3, 1);
  set(4, 5, 3, 1);
  set(4, 6, 4, -1);
  set(4, 7, 2, 2 * w);
  set(4, 9, 4, 1);
  set(7, 8, 9, -4 * w * w);
  set(7, 9, 7, -2);
  set(8, 9, 8, 2);
  return t;
}

double max_deviation(const StructureTable& a, const StructureTable& b) {
  double worst = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (int k = 0; k < 9; ++k)
        worst = std::max(worst, std::abs(a.entries[i][j][k] - b.entries[i][j][k]));
  return worst;
}

double ideal_residual(const StructureTable& t) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 9; ++j)
      for (int k = 6; k < 9; ++k)
        worst = std::max(worst, std::abs(t.entries[i][j][k]));
  return worst;
}

double antisymmetry_residual(double omega, const std::vector<Vec6>& samples) {
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i)
    for (int j = i + 1; j <= 9; ++j) {
      const auto a = GeneratorField::y(i, omega), b = GeneratorField::y(j, omega);
      for (const auto& p : samples) {
        const Vec6 ab = lie_bracket(a, b, p), ba = lie_bracket(b, a, p);
        for (int r = 0; r < 6; ++r)
          worst = std::max(worst, std::abs(ab[r] + ba[r]));
      }
    }
  return worst;
}

double jacobi_residual(double omega, int triples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto pts = random_samples(triples, seed + 1);
  double worst = 0.0;
  for (int n = 0; n < triples; ++n) {
    int idx[3];
    idx[0] = 1 + static_cast<int>(rng() % 9);
    do
      idx[1] = 1 + static_cast<int>(rng() % 9);
    while (idx[1] == idx[0]);
    do
      idx[2] = 1 + static_cast<int>(rng() % 9);
    while (idx[2] == idx[0] || idx[2] == idx[1]);
    const auto X = GeneratorField::y(idx[0], omega);
    const auto Y = GeneratorField::y(idx[1], omega);
    const auto Z = GeneratorField::y(idx[2], omega);
    const Vec6& p = pts[n];
    const Vec6 a = lie_bracket(X, bracket_field(Y, Z), p);
    const Vec6 b = lie_bracket(Y, bracket_field(Z, X), p);
    const Vec6 c = lie_bracket(Z, bracket_field(X, Y), p);
    for (int r = 0; r < 6; ++r)
      worst = std::max(worst, std::abs(a[r] + b[r] + c[r]));
  }
  return worst;
}

std::string format_expansion(const Expansion& e, double tol) {
  std::string out;
  char buf[48];
  for (int k = 0; k < 9; ++k) {
    if (std::abs(e[k]) <= tol)
      continue;
    std::snprintf(buf, sizeof buf, "%s%.6g*Y%d", out.empty() ? "" : " ", e[k], k + 1);
    out += buf;
  }
  return out.empty() ? "0" : out;
}

CSField cs_entropic(Direction dir, int which) {
  return [dir = std::move(dir), which](const State& s) {
    const auto l = dir(s);
    const double w = l[0] * s.u + l[1] * s.v;
    return which == 1 ? std::array<double, 3>{l[0], w, 0.0} : std::array<double, 3>{l[1], 0.0, w};
  };
}

CSField cs_acoustic(Direction dir, double g, int which) {
  return [dir = std::move(dir), g, which](const State& s) {
    const auto l = dir(s);
    const double w = l[0] * s.u + l[1] * s.v + std::sqrt(g * s.h);
    return which == 1 ? std::array<double, 3>{l[0], w, 0.0} : std::array<double, 3>{l[1], 0.0, w};
  };
}

CSField cs_material() {
  return [](const State& s) { return std::array<double, 3>{1.0, s.u, s.v}; };
}

// entropic wave 1, acoustic wave 2 with spatial part (1, 0). The d_y
// coefficient carries +l^1_1 sqrt(gh); the other sign leaves lambda^1 . xi != 0.
CSField cs_entropic_acoustic(const SolutionAnsatz& a, double g) {
  return [lam = a.lambdas, g](const State& s) {
    const LambdaRows L = lam(s);
    const double o = L[1][1] < 0.0 ? -1.0 : 1.0; // orient the acoustic wave along +x
    const double d = o * (L[0][1] * L[1][2] - L[0][2] * L[1][1]);
    const double c = std::sqrt(g * s.h);
    return std::array<double, 3>{d, d * s.u - L[0][2] * c, d * s.v + L[0][1] * c};
  };
}

CSField cs_mixed_acoustic(double phi1, double phi2, double g) {
  return [phi1, phi2, g](const State& s) {
    const double S = std::sin(phi1 - phi2);
    const double c = std::sqrt(g * s.h);
    return std::array<double, 3>{S, S * s.u + (std::cos(phi1) + std::cos(phi2)) * c,
                                 S * s.v - (std::sin(phi1) + std::sin(phi2)) * c};
  };
}

CSField cs_cross(const SolutionAnsatz& a) {
  return [lam = a.lambdas](const State& s) {
    const LambdaRows L = lam(s);
    const auto& p = L[0];
    const auto& q = L[1];
    return std::array<double, 3>{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2],
                                 p[0] * q[1] - p[1] * q[0]};
  };
}

std::vector<CSField> family_fields(const SolutionDescriptor& d, const SolutionAnsatz& a) {
  const auto dir = [lam = a.lambdas](const State& s) {
    const LambdaRows L = lam(s);
    return std::array<double, 2>{L[0][1], L[0][2]};
  };
  const double g = d.params.g;
  switch (d.family) {
  case Family::E_GENERIC:
  case Family::E_PERIODIC:
  case Family::E_HYPERBOLIC:
    return {cs_entropic(dir, 1), cs_entropic(dir, 2)};
  case Family::S_SIMPLE:
  case Family::S_ROTATING:
  case Family::S_FRESNEL:
    return {cs_acoustic(dir, g, 1), cs_acoustic(dir, g, 2)};
  case Family::ES_RANK2:
    return {cs_entropic_acoustic(a, g)};
  case Family::SS_MIXED:
    return {cs_mixed_acoustic(d.c.phi1, d.c.phi2, g)};
  case Family::SS_RANK2:
    return {cs_cross(a)};
  case Family::EE_DEGENERATE:
  case Family::SS_BRANCH_A:
    return {cs_material()};
  }
  return {};
}

} // namespace swwlab
