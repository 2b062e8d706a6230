#pragma once

// Re-derivation of the recursion operators from the requirement that R maps
// a symmetry to the next one, and the errata against the reference tables.

#include <string>
#include <vector>

#include "integrable/hierarchy.hpp"

namespace integrable {

struct Erratum {
  Family family;
  int base;
  std::string item;       // "R^(3)", "sigma^(2)", "u_t,11", ...
  std::string kind;       // "reading", "coefficient" or "sign"
  std::string published;  // as printed, or as read for kind "reading"
  std::string derived;
  std::string detail;
};

struct RecursionDerivation {
  RecursionOperator op;
  std::vector<Erratum> errata;  // operator entries only
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::vector<Rational> lambdas;  // one per matching pair
  /// Every equation of the system reduces to 0 = 0 at the solution.
  bool consistent = false;
  /// R(G_w) is proportional to the independently derived G_{w+step}.
  int witness_order = 0;
  bool witness = false;
};

/// Ansatz: leading a^step D^step, graded local coefficients with unknown
/// constants, nonlocal pairs with unknown scalars; imposes R(G_m) = lambda
/// G_{m+step} for two orders m (KdV 3, 5; SKK 5, 7), the targets being the
/// symmetry flows of the seed. Throws Error if the solution is not unique.
RecursionDerivation derive_recursion_coefficients(Family family, int base, bool with_witness = true);

/// Reference flow listings against the generated hierarchy, plus readings
/// of entries that do not parse as printed.
std::vector<Erratum> flow_errata(Family family, int base);

/// Operator errata and flow errata together.
std::vector<Erratum> errata(Family family, int base);

}  // namespace integrable
