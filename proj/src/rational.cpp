#include "integrable/rational.hpp"

#include <stdexcept>

#include "integrable/error.hpp"

namespace integrable {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational", 0);
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'", 0);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

bool exact_root(const Rational& value, unsigned m, Rational& root) {
  if (m == 0) return false;
  if (m == 1) {
    root = value;
    return true;
  }
  const bool negative = sgn(value) < 0;
  if (negative && m % 2 == 0) return false;
  Integer num = abs(value.get_num());
  const Integer& den = value.get_den();
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), m) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), m) == 0) return false;
  root = Rational(rn, rd);
  root.canonicalize();
  root.canonicalize();
  if (negative) root = -root;
  return true;
}

}  // namespace integrable
