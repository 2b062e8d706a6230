#pragma once

// Level grading above a base b: level(u_{b+j}) = j, while a, ab, constants and
// u_0..u_b have level 0. D raises the level of a homogeneous expression by 1.

#include <map>
#include <vector>

#include "integrable/ring.hpp"

namespace integrable {

/// multiplicity[j-1] = how often the part j occurs.
struct Partition {
  std::vector<int> multiplicity;

  int total() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// All partitions of n, multiplicity vectors in descending lexicographic order
/// (n*1 first, the single part n last). Throws Error for n < 1.
std::vector<Partition> partitions(int n);

/// Number of partitions of n (0 for n < 0, 1 for n = 0).
Integer partition_count(int n);

/// prod_j u_{b+j}^{m_j}.
struct LevelMonomial {
  int base = 0;
  std::map<int, int> factors;  // offset j >= 1 -> exponent

  int level() const;
  Monomial monomial() const;
};

/// One monomial per partition of n, in partitions() order.
std::vector<LevelMonomial> level_monomials(int b, int n);

/// Level of a monomial above b.
int level_of(const Monomial& m, int b);

/// e split by level; parts sum back to e. Zero maps to an empty map.
std::map<int, DiffPoly> level_decompose(const DiffPoly& e, int b);

/// The maximal-level part of e (zero for zero).
DiffPoly top_level(const DiffPoly& e, int b);

/// True if every term of e has the given level.
bool is_level_homogeneous(const DiffPoly& e, int b, int level);

}  // namespace integrable
