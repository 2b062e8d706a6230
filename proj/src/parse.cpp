#include "integrable/parse.hpp"

#include <cctype>
#include <limits>

#include "integrable/error.hpp"

namespace integrable {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int max_order) : text_(text), max_order_(max_order) {}

  DiffPoly run() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    DiffPoly e = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int max_order_;

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  DiffPoly expr() {
    DiffPoly e = term();
    for (;;) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  DiffPoly term() {
    DiffPoly e = unary();
    for (;;) {
      if (accept('*')) {
        e = multiply(e, unary());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        DiffPoly d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (d.size() != 1) throw ParseError("division by a non-monomial", at);
        e = multiply(e, d.pow(-1));
      } else {
        return e;
      }
    }
  }

  DiffPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  DiffPoly power() {
    DiffPoly base = primary();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    const bool paren = accept('(');
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip();
    const long n = digits();
    if (paren && !accept(')')) throw ParseError("expected ')'", pos_);
    const long exp = sign * n;
    if (exp < 0 && base.size() != 1) throw ParseError("negative power of a non-monomial", at);
    if (exp > std::numeric_limits<int>::max() / 2) throw ParseError("exponent too large", at);
    return base.pow(static_cast<int>(exp));
  }

  long digits() {
    const std::size_t start = pos_;
    long n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + (text_[pos_] - '0');
      if (n > 1000000000L) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", start);
    return n;
  }

  DiffPoly primary() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      DiffPoly e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return DiffPoly(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return identifier(text_.substr(start, pos_ - start), start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  DiffPoly identifier(std::string_view id, std::size_t at) const {
    if (id == "a") return DiffPoly::var(Var::a());
    if (id == "ab") return DiffPoly::var(Var::ab());
    if (id[0] == 'u') {
      if (id.size() == 1) return DiffPoly::jet(0);
      bool numeric = true;
      for (char ch : id.substr(1)) numeric = numeric && std::isdigit(static_cast<unsigned char>(ch));
      if (numeric) {
        if (id.size() > 6) throw ParseError("jet order too large", at);
        const int k = std::stoi(std::string(id.substr(1)));
        if (k > max_order_) throw ParseError("jet order " + std::to_string(k) + " exceeds maximum", at);
        return DiffPoly::jet(k);
      }
    }
    return DiffPoly::var(Var::constant(id));
  }
};

void print_factor(std::string& out, Var v, int exp) {
  out += v.name();
  if (exp != 1) {
    out += '^';
    out += std::to_string(exp);
  }
}

// Coefficient symbols, then constants, then jet variables (highest first).
std::string monomial_body(const Monomial& m) {
  std::string out;
  auto emit = [&](auto pred) {
    for (const auto& f : m.factors()) {
      if (!pred(f.var)) continue;
      if (!out.empty()) out += '*';
      print_factor(out, f.var, f.exp);
    }
  };
  emit([](Var v) { return v.is_coeff(); });
  emit([](Var v) { return v.is_const(); });
  emit([](Var v) { return v.is_jet(); });
  return out;
}

}  // namespace

DiffPoly parse(std::string_view text, int max_order) { return Parser(text, max_order).run(); }

std::string print(const Monomial& m) {
  if (m.is_one()) return "1";
  return monomial_body(m);
}

std::string print(const DiffPoly& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) {
        out += '-';
        c = -c;
      }
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    if (t.mono.is_one()) {
      out += to_string(c);
    } else if (c == 1) {
      out += monomial_body(t.mono);
    } else {
      out += to_string(c);
      out += '*';
      out += monomial_body(t.mono);
    }
  }
  return out;
}

}  // namespace integrable
