#pragma once

// Text grammar for ring elements.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['+' | '-'] digits | '(' ['+' | '-'] digits ')'
//   primary := digits | identifier | '(' expr ')'
//
// Identifiers: `u` and `u<k>` are jet variables, `a` and `ab` the coefficient
// symbols, anything else a constant symbol. Division is allowed by nonzero
// monomials only. Whitespace is ignored.

#include <string>
#include <string_view>

#include "integrable/ring.hpp"

namespace integrable {

/// Throws ParseError (with character position) on malformed input.
DiffPoly parse(std::string_view text, int max_order = kRingMaxJetOrder);

/// Canonical text; parse(print(e)) == e.
std::string print(const DiffPoly& e);
std::string print(const Monomial& m);

}  // namespace integrable
