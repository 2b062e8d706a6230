#pragma once

// Differential structure on the ring: the separant root `a` is a function of
// the base jet variable u_b only, `ab` is its u_b-derivative, and the second
// derivative is eliminated by the family's closure rule
//
//   SKK type (a = (lambda u_b + mu)^(-1/3)):        d ab/d u_b = 4 ab^2 / a
//   KdV type (a = (alpha u_b^2 + beta u_b + gamma)^(-1/2)):
//                                                   d ab/d u_b = 2 ab^2 / a + P/4 a^5
//
// with P = beta^2 - 4 alpha gamma. Coefficients of lower jet variables are
// frozen constants, so every operator below is exact on the ring.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "integrable/ring.hpp"

namespace integrable {

enum class Family { KdV, SKK };

std::string_view to_string(Family f);
/// Accepts "kdv" / "skk" (case-insensitive).
Family parse_family(std::string_view text);

class JetContext {
 public:
  /// Throws Unsupported for base levels outside the classification
  /// (KdV type: b = 3; SKK type: b in {3, 4, 5}).
  JetContext(Family family, int base, int max_order = kDefaultMaxOrder);

  Family family() const { return family_; }
  int base() const { return base_; }
  int max_order() const { return max_order_; }
  Var base_var() const { return Var::jet(base_); }

  JetContext with_base(int base) const { return JetContext(family_, base, max_order_); }

 private:
  Family family_;
  int base_;
  int max_order_;
};

/// Local part sum_k c_k D^k plus nonlocal tail sum_i sigma_i D^-1 gamma_i.
struct PseudoDiffOperator {
  struct Nonlocal {
    DiffPoly sigma;
    DiffPoly gamma;
  };
  std::map<int, DiffPoly> local;
  std::vector<Nonlocal> nonlocal;

  int order() const { return local.empty() ? 0 : local.rbegin()->first; }
};

/// d/dv. For v = u_b the derivative chains through a and ab; for v = a or ab
/// it is the formal partial derivative in that symbol.
DiffPoly partial_derivative(const DiffPoly& e, Var v, const JetContext& ctx);

/// D = sum_k u_{k+1} d/du_k. Throws OrderOverflow past ctx.max_order().
DiffPoly total_derivative(const DiffPoly& e, const JetContext& ctx);
DiffPoly total_derivative(const DiffPoly& e, int times, const JetContext& ctx);

/// Jet orders on which e depends (explicit jet variables, plus b when a or ab
/// occurs), ascending.
std::vector<int> dependency_orders(const DiffPoly& e, const JetContext& ctx);

/// sum_i de/du_i D^i(F).
DiffPoly time_derivative(const DiffPoly& e, const DiffPoly& flow, const JetContext& ctx);

/// F_* = sum_i dF/du_i D^i.
PseudoDiffOperator frechet(const DiffPoly& flow, const JetContext& ctx);

/// -F_*^dagger gamma = sum_i (-1)^(i+1) D^i(dF/du_i gamma).
DiffPoly adjoint_apply(const DiffPoly& flow, const DiffPoly& gamma, const JetContext& ctx);

/// Euler operator sum_i (-1)^i D^i(d rho/du_i).
DiffPoly variational_derivative(const DiffPoly& rho, const JetContext& ctx);

/// True iff e lies in Im(D), decided by the Euler operator.
bool is_exact(const DiffPoly& e, const JetContext& ctx);

/// h with D(h) = e and zero integration constant. Throws NotExact when e is
/// not a total derivative and NonIntegrableMonomial when integration by parts
/// cannot close although e is exact. Complete for expressions whose coefficient
/// symbols only meet jets above the base (and for plain jet polynomials);
/// mixing a, ab with explicit u_0..u_b can hit the second error.
DiffPoly antiderivative(const DiffPoly& e, const JetContext& ctx);

/// Primitive with respect to u_b (chain-aware): returns H with dH/du_b = g.
/// Throws NonIntegrableMonomial if no primitive exists in the ring.
DiffPoly integrate_base(const DiffPoly& g, const JetContext& ctx);

/// sum c_k D^k(e) + sum sigma_i antiderivative(gamma_i e).
DiffPoly apply_operator(const PseudoDiffOperator& op, const DiffPoly& e, const JetContext& ctx);

}  // namespace integrable
