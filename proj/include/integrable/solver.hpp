#pragma once

// Undetermined-coefficient solving: an identity that is affine in a set of
// unknown constants is split into one linear equation per monomial in the
// remaining indeterminates and solved exactly.

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "integrable/linalg.hpp"
#include "integrable/ring.hpp"

namespace integrable {

struct LinearSystem {
  std::vector<Var> unknowns;
  /// Columns index `unknowns`.
  std::vector<linalg::Row> equations;
  /// The monomial each equation was read off (canonical order per identity).
  std::vector<Monomial> origins;
};

/// Appends the equations of `identity = 0`. Throws NonlinearInUnknowns when a
/// term holds an unknown with exponent != 1 or two unknowns at once.
void append_identity(LinearSystem& sys, const DiffPoly& identity);

LinearSystem match_to_system(const DiffPoly& identity, std::span<const Var> unknowns);

struct Unique {
  std::vector<Rational> values;
};
struct Parametric {
  std::vector<Rational> particular;  // free unknowns set to zero
  std::vector<std::size_t> free;     // indices into unknowns
  std::vector<std::vector<Rational>> basis;
};
struct Inconsistent {};

using Solution = std::variant<Unique, Parametric, Inconsistent>;

/// Exact elimination; rows are processed in order and each row pivots on its
/// lowest remaining unknown, so the result is a function of the system alone.
Solution solve(const LinearSystem& sys);

/// unknown name -> value.
std::map<std::string, Rational> assignment(const LinearSystem& sys, const std::vector<Rational>& values);

/// Substitutes values for the unknowns of sys in e.
DiffPoly substitute_solution(const DiffPoly& e, const LinearSystem& sys, const std::vector<Rational>& values);

/// Fresh unknowns prefix0, prefix1, ...
std::vector<Var> make_unknowns(std::string_view prefix, std::size_t count);

}  // namespace integrable
