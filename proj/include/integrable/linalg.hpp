#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "integrable/rational.hpp"

namespace integrable::linalg {

/// Sparse row: entries sorted by column, no zero entries.
struct Row {
  std::vector<std::pair<std::size_t, Rational>> entries;
  Rational rhs;  // sum(entry * x_col) = rhs
};

/// Incremental exact Gaussian elimination over the rationals.
///
/// Each added row is reduced against the current pivots; its lowest remaining
/// column becomes a new pivot. The pivot sequence depends only on the order in
/// which rows are added, so the same system always yields the same output.
class Eliminator {
 public:
  explicit Eliminator(std::size_t columns) : columns_(columns) {}

  /// Returns false once an inconsistent row (0 = nonzero) has been seen.
  bool add(Row row);

  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t columns() const { return columns_; }
  std::vector<std::size_t> free_columns() const;

  /// Particular solution with every free column set to zero.
  std::optional<std::vector<Rational>> particular() const;
  /// Basis of the homogeneous solution space, one vector per free column.
  std::vector<std::vector<Rational>> nullspace() const;

 private:
  std::vector<Rational> back_substitute(const std::vector<Rational>& free_values, bool homogeneous) const;

  std::size_t columns_;
  bool consistent_ = true;
  // pivot column -> index into rows_; rows_ kept in insertion order.
  std::map<std::size_t, std::size_t> pivots_;
  std::vector<std::pair<std::size_t, Row>> rows_;
};

}  // namespace integrable::linalg
