#pragma once

// Flows and recursion operators of the supported families.
//
// Flows are kept at top level: only the dependence on u_b (through a, ab) and
// on the jet variables above b is tracked. A flow of order m is homogeneous of
// level m - b, and apart from the non-quasilinear seeds its u_m coefficient
// is exactly a^m.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "integrable/jet.hpp"

namespace integrable {

struct Seed {
  std::string label;
};
struct Generated {
  int from_order = 0;
  Rational lambda;
};
struct Symmetry {
  int seed_order = 0;
};
using Provenance = std::variant<Seed, Generated, Symmetry>;

std::string describe(const Provenance& p);

struct FlowRecord {
  Family family;
  int base;
  int order;
  DiffPoly rhs;
  Provenance provenance;

  JetContext context(int max_order = kDefaultMaxOrder) const { return JetContext(family, base, max_order); }
};

struct RecursionOperator {
  PseudoDiffOperator op;
  Family family;
  int base;
  int step;
};

/// Order increment of the family's recursion operator (2 or 6).
int recursion_step(Family family);

/// True for orders at which the family has flows.
bool admissible_order(Family family, int order);

FlowRecord seed_flow(Family family, int base);

/// Seeds of all chains: KdV {3}; SKK {5, 7} where the order-7 flow comes from
/// the listings and is checked to commute with the order-5 seed.
std::vector<FlowRecord> chain_seeds(Family family, int base);

struct Ansatz {
  DiffPoly expr;
  std::vector<Var> unknowns;
};

/// Coefficient monomials a^n ab^j P^k compatible with the two gradings D
/// preserves (a-degree n + j - 4k, u-weight f - j - 2k for f jet factors).
std::vector<Monomial> graded_coefficients(Family family, int factors, int a_degree, int weight);

/// Sum over level monomials of level `level`, each times its graded
/// coefficient monomials with one unknown apiece.
Ansatz graded_ansatz(Family family, int base, int level, int a_degree, int weight, std::string_view prefix);

/// The order-m flow commuting with `seed`, found by solving the graded ansatz
/// and normalizing the u_m coefficient to a^m. Throws Error when the solution
/// is not unique or does not exist.
FlowRecord symmetry_flow(const FlowRecord& seed, int order);

/// Operator with the local coefficients as tabulated (see reference.hpp).
RecursionOperator published_recursion_operator(Family family, int base);

/// The operator validated by derive_recursion_coefficients (cached).
RecursionOperator recursion_operator(Family family, int base);

/// R(f) rescaled so the leading coefficient is a^(m+step).
FlowRecord apply_recursion(const RecursionOperator& r, const FlowRecord& f);

/// F_*[G] - G_*[F].
DiffPoly commutator(const DiffPoly& f, const DiffPoly& g, const JetContext& ctx);
DiffPoly commutator(const FlowRecord& f, const FlowRecord& g);

/// Chain seeds plus repeated recursion, sorted by order.
std::vector<FlowRecord> generate_hierarchy(Family family, int base, int max_order);

/// v = u_1: shift_jet(D F, -1) over base b - 1. Throws OrderUnderflow when
/// the base would drop below 3 and Error when F depends on u_0.
FlowRecord potentiate(const FlowRecord& f);

}  // namespace integrable
