#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swwlab/core.hpp"
#include "swwlab/verify.hpp"

namespace swwlab {

enum class Gen { P0, P1, P2, L, G1, G2, D, Z1, Z2 };

// (t, x, y, u, v, h) and coefficients (xi1, xi2, xi3, eta1, eta2, eta3)
using Vec6 = std::array<double, 6>;

Vec6 generator(Gen id, const Vec6& pt, double omega);
// Y1..Y9 as linear combinations of the generators above
Vec6 y_basis(int i, const Vec6& pt, double omega);

const char* to_string(Gen id);

struct GeneratorField {
  std::string id;
  double omega = 1.0;
  std::function<Vec6(const Vec6&)> coeffs;

  Vec6 operator()(const Vec6& pt) const { return coeffs(pt); }

  static GeneratorField of(Gen g, double omega);
  static GeneratorField y(int i, double omega);
};

// [A, B]^i = A^j d_j B^i - B^j d_j A^i, 4th-order differences with step
// 1e-4 max(1, |coordinate|)
Vec6 lie_bracket(const GeneratorField& a, const GeneratorField& b, const Vec6& pt);
GeneratorField bracket_field(const GeneratorField& a, const GeneratorField& b);

using Expansion = std::array<double, 9>; // coefficients of Y1..Y9

// entries(i, j) (0-based) expands the commutator of Y_{i+1} and Y_{j+1} in
// the orientation of the published table, i.e. lie_bracket(Y_j, Y_i).
struct StructureTable {
  double omega = 1.0;
  std::array<std::array<Expansion, 9>, 9> entries{};
  double max_expansion_residual = 0.0;

  const Expansion& at(int i, int j) const { return entries[i - 1][j - 1]; } // 1-based
};

std::vector<Vec6> random_samples(int n, std::uint64_t seed = 7);

// DegenerateSamples below 6 points or when the stacked basis is rank-deficient
StructureTable structure_constants(double omega, const std::vector<Vec6>& samples);

// closed-form table for comparison
StructureTable reference_table(double omega);

double max_deviation(const StructureTable& a, const StructureTable& b);
// largest Y7..Y9 coefficient in any bracket involving Y1..Y6
double ideal_residual(const StructureTable& t);
double antisymmetry_residual(double omega, const std::vector<Vec6>& samples);
double jacobi_residual(double omega, int triples, std::uint64_t seed = 11);

std::string format_expansion(const Expansion& e, double tol = 1e-9);

// Conditional-symmetry fields (xi_t, xi_x, xi_y) as functions of the state.
using Direction = std::function<std::array<double, 2>(const State&)>;

CSField cs_entropic(Direction dir, int which);          // which = 1: d_t/d_x pair, 2: d_t/d_y
CSField cs_acoustic(Direction dir, double g, int which); // same with the sqrt(gh) shift
CSField cs_material();                                   // d_t + u d_x + v d_y
CSField cs_entropic_acoustic(const SolutionAnsatz& a, double g);
CSField cs_mixed_acoustic(double phi1, double phi2, double g);
CSField cs_cross(const SolutionAnsatz& a); // lambda^1 x lambda^2

// The fields under which the family's solutions are invariant.
std::vector<CSField> family_fields(const SolutionDescriptor& d, const SolutionAnsatz& a);

} // namespace swwlab
