#pragma once

// Canonical densities, conservation and cosymmetry tests.

#include <optional>
#include <string_view>
#include <vector>

#include "integrable/jet.hpp"

namespace integrable {

enum class DensityKind { RhoMinus1, Rho1, Rho3, Generic };

struct DensityLabel {
  DensityKind kind = DensityKind::RhoMinus1;
  int level = 0;  // Generic only

  static DensityLabel generic(int level) { return {DensityKind::Generic, level}; }
  /// Level above the base: 0, 2, 4, or the generic level.
  int target_level() const;
  friend bool operator==(const DensityLabel&, const DensityLabel&) = default;
};

struct Density {
  DiffPoly expr;
  DensityLabel label;
  std::vector<Var> unknowns;
};

/// [dF/du_m]^(-1/m). Throws NotAMonomial or RootNotExact.
DiffPoly canonical_rho_minus1(const DiffPoly& flow, int m, const JetContext& ctx);

struct Conservation {
  bool conserved = false;
  std::optional<DiffPoly> flux;
  DiffPoly residual;  // Euler operator of rho_t
};

Conservation check_conserved(const DiffPoly& rho, const DiffPoly& flow, const JetContext& ctx);

struct CosymmetryCheck {
  bool holds = false;
  DiffPoly residual;  // gamma_t + F_*^dagger gamma
};

CosymmetryCheck check_cosymmetry(const DiffPoly& gamma, const DiffPoly& flow, const JetContext& ctx);

/// Coefficient functions of u_b are replaced by sums over a^i ab^j P^k with
/// exponents in these ranges.
struct MonomialSpan {
  int a_min = -8, a_max = 8;
  int ab_min = 0, ab_max = 6;
  int p_min = 0, p_max = 0;
};

/// RhoMinus1 is a^-1 with no unknowns; the others multiply every level
/// monomial of their level by a spanned coefficient with fresh unknowns.
Density density_ansatz(DensityLabel label, const JetContext& ctx, std::string_view prefix, const MonomialSpan& span = {});

/// A density is trivial when it is itself a total derivative.
bool is_trivial(const DiffPoly& rho, const JetContext& ctx);

/// Basis of the densities in the ansatz conserved along `flow` (one per
/// independent solution). Exact (trivial) members are included.
std::vector<DiffPoly> conserved_instances(const Density& ansatz, const DiffPoly& flow, const JetContext& ctx);

/// As conserved_instances, reduced modulo the exact members of the ansatz.
std::vector<DiffPoly> nontrivial_conserved_instances(const Density& ansatz, const DiffPoly& flow, const JetContext& ctx);

}  // namespace integrable
