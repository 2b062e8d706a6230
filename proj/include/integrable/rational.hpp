#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace integrable {

using Rational = mpq_class;
using Integer = mpz_class;

/// n/d in canonical form.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q"; the result is canonical (reduced, positive denominator).
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// Exact m-th root of a rational, if it exists.
bool exact_root(const Rational& value, unsigned m, Rational& root);

}  // namespace integrable
