#pragma once

// Reference data for the supported (family, base) pairs as originally
// tabulated: flows u_{t,m}, recursion-operator coefficients R^(i) and the
// nonlocal pieces. Entries are kept as printed; `printed` is set only where
// the original text does not parse and `text` is its reading.

#include <map>
#include <string>
#include <vector>

#include "integrable/jet.hpp"

namespace integrable {

struct ReferenceItem {
  std::string text;
  std::string printed;
};

struct ReferenceTables {
  Family family;
  int base;
  /// Seed flow(s) as stated with the classification (order -> rhs).
  std::map<int, ReferenceItem> seeds;
  /// Flow listings accompanying the operator.
  std::map<int, ReferenceItem> flows;
  /// Local coefficients R^(i).
  std::map<int, ReferenceItem> local;
  /// sigma^(i) as printed, in the order of the nonlocal terms.
  std::vector<ReferenceItem> sigma;
  /// Densities whose variational derivatives are the gamma^(i).
  std::vector<std::string> gamma_densities;
};

const ReferenceTables& reference_tables(Family family, int base);

/// Parses a reference entry in the given context.
DiffPoly reference_poly(const ReferenceItem& item, int max_order = kRingMaxJetOrder);

}  // namespace integrable
