#pragma once

// Sparse multivariate Laurent polynomials with exact rational coefficients over
// the jet indeterminates u_0, u_1, ..., the coefficient symbols a (separant
// root) and ab (its derivative with respect to the base jet variable), and
// named constant symbols (P, ansatz unknowns, ...).
//
// Monomial order: lexicographic with variable priority
//   u_N > ... > u_1 > u_0 > a > ab > constants (ordered by name),
// larger exponent first. A DiffPoly stores its terms in descending order, so
// the highest derivative leads, mirroring the usual way flows are written.

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "integrable/rational.hpp"

namespace integrable {

/// Hard ceiling for jet orders representable in a Var.
inline constexpr int kRingMaxJetOrder = 4095;
/// Default ceiling used by canonicalize() and JetContext.
inline constexpr int kDefaultMaxOrder = 40;

enum class VarKind : std::uint8_t { Jet, CoeffA, CoeffAb, Const };

/// An indeterminate of the ring. Trivially copyable 32-bit handle.
class Var {
 public:
  static Var jet(int order);
  static Var a() { return Var{kCoeffTag}; }
  static Var ab() { return Var{kCoeffTag | 1u}; }
  /// Interned constant symbol; the same name always yields the same Var.
  static Var constant(std::string_view name);

  VarKind kind() const noexcept;
  /// Jet order (only for VarKind::Jet).
  int order() const noexcept { return static_cast<int>(kJetMask - (code_ & kJetMask)); }
  /// Name of a constant symbol, or the grammar spelling of any other variable.
  std::string name() const;
  std::uint32_t code() const noexcept { return code_; }

  bool is_jet() const noexcept { return (code_ >> kTagShift) == 0; }
  bool is_coeff() const noexcept { return (code_ >> kTagShift) == 1; }
  bool is_const() const noexcept { return (code_ >> kTagShift) == 2; }

  friend bool operator==(Var, Var) = default;

 private:
  static constexpr unsigned kTagShift = 28;
  static constexpr std::uint32_t kJetMask = 0xFFFFu;
  static constexpr std::uint32_t kCoeffTag = 1u << kTagShift;
  static constexpr std::uint32_t kConstTag = 2u << kTagShift;

  explicit constexpr Var(std::uint32_t code) : code_(code) {}
  std::uint32_t code_;

  friend bool var_before(Var x, Var y);
  friend const std::string& const_name(Var v);
};

/// Priority order of variables (see file comment).
bool var_before(Var x, Var y);
const std::string& const_name(Var v);

/// The distinguished constant P of the KdV-type closure rule.
Var var_P();

struct Factor {
  Var var;
  std::int32_t exp;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Power product with integer (possibly negative) exponents; factors sorted by
/// var_before, no zero exponents.
class Monomial {
 public:
  using Storage = boost::container::small_vector<Factor, 6>;

  Monomial() = default;
  static Monomial of(Var v, int exp = 1);

  std::span<const Factor> factors() const { return {factors_.data(), factors_.size()}; }
  bool is_one() const { return factors_.empty(); }
  int exponent(Var v) const;
  bool contains(Var v) const { return exponent(v) != 0; }

  /// Multiplies in v^delta in place.
  void mul(Var v, int delta);
  Monomial times(const Monomial& other) const;
  Monomial without(Var v) const;
  Monomial shifted_jet(int d) const;

  /// Highest explicit jet order, or -1.
  int max_jet_order() const;
  bool has_coeff_symbols() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering compare(const Monomial& x, const Monomial& y);

 private:
  Storage factors_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// True when x sorts before y in the canonical (descending) term order.
inline bool term_before(const Monomial& x, const Monomial& y) { return compare(x, y) > 0; }

struct Term {
  Rational coeff;
  Monomial mono;
};

/// Normalized polynomial; immutable value semantics. Equality is syntactic and
/// decides mathematical equality because the form is canonical.
class DiffPoly {
 public:
  DiffPoly() = default;
  DiffPoly(const Rational& c);  // NOLINT: constants convert implicitly
  DiffPoly(long c) : DiffPoly(Rational(c)) {}
  DiffPoly(int c) : DiffPoly(Rational(c)) {}

  static DiffPoly var(Var v, int exp = 1);
  static DiffPoly jet(int order, int exp = 1) { return var(Var::jet(order), exp); }
  static DiffPoly term(const Rational& c, Monomial m);

  std::span<const Term> terms() const { return {terms_.data(), terms_.size()}; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// The rational value when the polynomial is a constant.
  std::optional<Rational> as_rational() const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& rhs);
  DiffPoly& operator-=(const DiffPoly& rhs);
  DiffPoly& operator*=(const DiffPoly& rhs);
  DiffPoly& operator*=(const Rational& c);

  friend DiffPoly operator+(DiffPoly lhs, const DiffPoly& rhs) { return lhs += rhs; }
  friend DiffPoly operator-(DiffPoly lhs, const DiffPoly& rhs) { return lhs -= rhs; }
  friend DiffPoly operator*(const DiffPoly& lhs, const DiffPoly& rhs);
  friend DiffPoly operator*(DiffPoly lhs, const Rational& c) { return lhs *= c; }
  friend DiffPoly operator*(const Rational& c, DiffPoly rhs) { return rhs *= c; }
  friend bool operator==(const DiffPoly& x, const DiffPoly& y);

  /// Non-negative integer power; negative powers only for single monomials.
  DiffPoly pow(int n) const;

  /// Multiplies every term by a monomial.
  DiffPoly times(const Rational& c, const Monomial& m) const;

  // Used by canonicalize(); the vector must already be canonical.
  static DiffPoly from_canonical(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

/// Sorts, combines equal monomials and drops zero coefficients. Throws
/// OrderOverflow if a jet variable exceeds max_order.
DiffPoly canonicalize(std::vector<Term> raw, int max_order = kDefaultMaxOrder);
/// Same, without the order check (internal hot path).
DiffPoly combine_terms(std::vector<Term> raw);

DiffPoly multiply(const DiffPoly& x, const DiffPoly& y);

/// Coefficient of v^j, v treated as the polynomial variable.
DiffPoly coefficient_of(const DiffPoly& e, Var v, int j);
/// Highest power of v present (0 if absent); lowest via min_degree.
int degree_in(const DiffPoly& e, Var v);
int min_degree_in(const DiffPoly& e, Var v);

/// Relabels u_k -> u_{k+d}. Throws OrderUnderflow if an order would go negative.
DiffPoly shift_jet(const DiffPoly& e, int d);

/// Highest explicit jet order in e, -1 if none.
int max_jet_order(const DiffPoly& e);
bool has_coeff_symbols(const DiffPoly& e);
/// Every variable occurring in e, in priority order.
std::vector<Var> variables(const DiffPoly& e);

/// Replaces constant symbols by rational values.
DiffPoly substitute(const DiffPoly& e, const std::map<std::string, Rational>& values);
/// Replaces any variable by a polynomial (v must occur with non-negative
/// exponents unless the replacement is a monomial).
DiffPoly substitute(const DiffPoly& e, Var v, const DiffPoly& replacement);

/// Floating-point evaluation; every variable of e must be bound.
long double evaluate(const DiffPoly& e, const std::function<long double(Var)>& value);

}  // namespace integrable

template <>
struct std::hash<integrable::Monomial> {
  std::size_t operator()(const integrable::Monomial& m) const noexcept { return m.hash(); }
};
