#include "integrable/ring.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "integrable/error.hpp"

namespace integrable {

namespace {

// Append-only intern table. Readers never lock: slots are published with
// release stores before the id escapes the writer.
class SymbolTable {
 public:
  static constexpr std::uint32_t kCapacity = 1u << 20;

  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    if (count_ >= kCapacity) throw Error("constant symbol table exhausted");
    const std::uint32_t id = count_++;
    storage_.push_back(std::make_unique<std::string>(name));
    slots_[id].store(storage_.back().get(), std::memory_order_release);
    ids_.emplace(std::string(name), id);
    return id;
  }

  const std::string& name(std::uint32_t id) const {
    return *slots_[id].load(std::memory_order_acquire);
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::unique_ptr<std::string>> storage_;
  std::unique_ptr<std::atomic<const std::string*>[]> slots_{
      new std::atomic<const std::string*>[kCapacity]()};
  std::uint32_t count_ = 0;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

}  // namespace

Var Var::jet(int order) {
  if (order < 0) throw OrderUnderflow("negative jet order " + std::to_string(order));
  if (order > kRingMaxJetOrder) throw OrderOverflow("jet order " + std::to_string(order) + " exceeds ring limit");
  return Var{kJetMask - static_cast<std::uint32_t>(order)};
}

Var Var::constant(std::string_view name) { return Var{kConstTag | symbols().intern(name)}; }

VarKind Var::kind() const noexcept {
  switch (code_ >> kTagShift) {
    case 0: return VarKind::Jet;
    case 1: return (code_ & 1u) ? VarKind::CoeffAb : VarKind::CoeffA;
    default: return VarKind::Const;
  }
}

std::string Var::name() const {
  switch (kind()) {
    case VarKind::Jet: return "u" + std::to_string(order());
    case VarKind::CoeffA: return "a";
    case VarKind::CoeffAb: return "ab";
    case VarKind::Const: return const_name(*this);
  }
  return {};
}

const std::string& const_name(Var v) { return symbols().name(v.code_ & ~Var::kConstTag); }

bool var_before(Var x, Var y) {
  if (x.is_const() && y.is_const()) {
    if (x.code_ == y.code_) return false;
    return const_name(x) < const_name(y);
  }
  return x.code_ < y.code_;
}

Var var_P() {
  static const Var p = Var::constant("P");
  return p;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, int exp) {
  Monomial m;
  if (exp != 0) m.factors_.push_back({v, exp});
  return m;
}

int Monomial::exponent(Var v) const {
  for (const auto& f : factors_)
    if (f.var == v) return f.exp;
  return 0;
}

void Monomial::mul(Var v, int delta) {
  if (delta == 0) return;
  auto it = factors_.begin();
  for (; it != factors_.end(); ++it) {
    if (it->var == v) {
      it->exp += delta;
      if (it->exp == 0) factors_.erase(it);
      return;
    }
    if (var_before(v, it->var)) break;
  }
  factors_.insert(it, Factor{v, delta});
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin(), ie = factors_.end();
  auto j = other.factors_.begin(), je = other.factors_.end();
  while (i != ie && j != je) {
    if (i->var == j->var) {
      const int e = i->exp + j->exp;
      if (e != 0) out.factors_.push_back({i->var, e});
      ++i;
      ++j;
    } else if (var_before(i->var, j->var)) {
      out.factors_.push_back(*i++);
    } else {
      out.factors_.push_back(*j++);
    }
  }
  out.factors_.insert(out.factors_.end(), i, ie);
  out.factors_.insert(out.factors_.end(), j, je);
  return out;
}

Monomial Monomial::without(Var v) const {
  Monomial out;
  for (const auto& f : factors_)
    if (!(f.var == v)) out.factors_.push_back(f);
  return out;
}

Monomial Monomial::shifted_jet(int d) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.var.is_jet()) {
      const int k = f.var.order() + d;
      if (k < 0) throw OrderUnderflow("jet shift by " + std::to_string(d) + " underflows u" + std::to_string(f.var.order()));
      out.factors_.push_back({Var::jet(k), f.exp});
    } else {
      out.factors_.push_back(f);
    }
  }
  return out;
}

int Monomial::max_jet_order() const {
  // Jet variables sort first, highest order first.
  if (!factors_.empty() && factors_.front().var.is_jet()) return factors_.front().var.order();
  return -1;
}

bool Monomial::has_coeff_symbols() const {
  for (const auto& f : factors_)
    if (f.var.is_coeff()) return true;
  return false;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& f : factors_) {
    h ^= (static_cast<std::uint64_t>(f.var.code()) << 20) ^ static_cast<std::uint32_t>(f.exp);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering compare(const Monomial& x, const Monomial& y) {
  const auto& xf = x.factors_;
  const auto& yf = y.factors_;
  std::size_t i = 0, j = 0;
  while (i < xf.size() || j < yf.size()) {
    if (i < xf.size() && j < yf.size() && xf[i].var == yf[j].var) {
      if (xf[i].exp != yf[j].exp) return xf[i].exp <=> yf[j].exp;
      ++i;
      ++j;
      continue;
    }
    if (j >= yf.size() || (i < xf.size() && var_before(xf[i].var, yf[j].var)))
      return xf[i].exp > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    return yf[j].exp > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({c, Monomial{}});
}

DiffPoly DiffPoly::var(Var v, int exp) { return term(Rational(1), Monomial::of(v, exp)); }

DiffPoly DiffPoly::term(const Rational& c, Monomial m) {
  DiffPoly p;
  if (sgn(c) != 0) p.terms_.push_back({c, std::move(m)});
  return p;
}

DiffPoly DiffPoly::from_canonical(std::vector<Term> terms) {
  DiffPoly p;
  p.terms_ = std::move(terms);
  return p;
}

std::optional<Rational> DiffPoly::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].mono.is_one()) return terms_[0].coeff;
  return std::nullopt;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& x, std::span<const Term> y, bool negate_y) {
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const auto c = compare(x[i].mono, y[j].mono);
    if (c > 0) {
      out.push_back(x[i++]);
    } else if (c < 0) {
      out.push_back(y[j++]);
      if (negate_y) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = negate_y ? Rational(x[i].coeff - y[j].coeff) : Rational(x[i].coeff + y[j].coeff);
      if (sgn(s) != 0) out.push_back({std::move(s), x[i].mono});
      ++i;
      ++j;
    }
  }
  for (; i < x.size(); ++i) out.push_back(x[i]);
  for (; j < y.size(); ++j) {
    out.push_back(y[j]);
    if (negate_y) out.back().coeff = -out.back().coeff;
  }
  return out;
}

}  // namespace

DiffPoly& DiffPoly::operator+=(const DiffPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (terms_.empty()) return *this = rhs;
  terms_ = merge(terms_, rhs.terms(), false);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge(terms_, rhs.terms(), true);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& rhs) { return *this = multiply(*this, rhs); }

DiffPoly& DiffPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

DiffPoly operator*(const DiffPoly& lhs, const DiffPoly& rhs) { return multiply(lhs, rhs); }

bool operator==(const DiffPoly& x, const DiffPoly& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    if (x.terms_[i].coeff != y.terms_[i].coeff || !(x.terms_[i].mono == y.terms_[i].mono)) return false;
  }
  return true;
}

DiffPoly DiffPoly::pow(int n) const {
  if (n < 0) {
    if (terms_.size() != 1) throw NotAMonomial("negative power of a non-monomial");
    const Term& t = terms_[0];
    Monomial m;
    for (const auto& f : t.mono.factors()) m.mul(f.var, f.exp * n);
    Rational c;
    mpz_pow_ui(c.get_num_mpz_t(), t.coeff.get_den_mpz_t(), static_cast<unsigned long>(-n));
    mpz_pow_ui(c.get_den_mpz_t(), t.coeff.get_num_mpz_t(), static_cast<unsigned long>(-n));
    c.canonicalize();
    return term(c, std::move(m));
  }
  DiffPoly result(1);
  DiffPoly base = *this;
  while (n > 0) {
    if (n & 1) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

DiffPoly DiffPoly::times(const Rational& c, const Monomial& m) const {
  if (sgn(c) == 0) return {};
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.coeff * c, t.mono.times(m)});
  // Multiplying by a fixed monomial preserves the lexicographic order.
  return from_canonical(std::move(out));
}

DiffPoly combine_terms(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return term_before(x.mono, y.mono); });
  std::vector<Term> out;
  out.reserve(raw.size());
  for (auto& t : raw) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  return DiffPoly::from_canonical(std::move(out));
}

DiffPoly canonicalize(std::vector<Term> raw, int max_order) {
  for (const auto& t : raw) {
    if (t.mono.max_jet_order() > max_order)
      throw OrderOverflow("jet order " + std::to_string(t.mono.max_jet_order()) + " exceeds maximum " +
                          std::to_string(max_order));
  }
  return combine_terms(std::move(raw));
}

DiffPoly multiply(const DiffPoly& x, const DiffPoly& y) {
  if (x.is_zero() || y.is_zero()) return {};
  if (x.size() == 1) return y.times(x.terms()[0].coeff, x.terms()[0].mono);
  if (y.size() == 1) return x.times(y.terms()[0].coeff, y.terms()[0].mono);
  std::vector<Term> raw;
  raw.reserve(x.size() * y.size());
  for (const auto& s : x.terms())
    for (const auto& t : y.terms()) raw.push_back({s.coeff * t.coeff, s.mono.times(t.mono)});
  return combine_terms(std::move(raw));
}

DiffPoly coefficient_of(const DiffPoly& e, Var v, int j) {
  std::vector<Term> out;
  for (const auto& t : e.terms())
    if (t.mono.exponent(v) == j) out.push_back({t.coeff, t.mono.without(v)});
  return combine_terms(std::move(out));
}

int degree_in(const DiffPoly& e, Var v) {
  int d = 0;
  bool first = true;
  for (const auto& t : e.terms()) {
    const int k = t.mono.exponent(v);
    if (first || k > d) d = k;
    first = false;
  }
  return d;
}

int min_degree_in(const DiffPoly& e, Var v) {
  int d = 0;
  bool first = true;
  for (const auto& t : e.terms()) {
    const int k = t.mono.exponent(v);
    if (first || k < d) d = k;
    first = false;
  }
  return d;
}

DiffPoly shift_jet(const DiffPoly& e, int d) {
  if (d == 0) return e;
  std::vector<Term> out;
  out.reserve(e.size());
  for (const auto& t : e.terms()) out.push_back({t.coeff, t.mono.shifted_jet(d)});
  return DiffPoly::from_canonical(std::move(out));
}

int max_jet_order(const DiffPoly& e) {
  int k = -1;
  for (const auto& t : e.terms()) k = std::max(k, t.mono.max_jet_order());
  return k;
}

bool has_coeff_symbols(const DiffPoly& e) {
  for (const auto& t : e.terms())
    if (t.mono.has_coeff_symbols()) return true;
  return false;
}

std::vector<Var> variables(const DiffPoly& e) {
  std::vector<Var> vs;
  for (const auto& t : e.terms())
    for (const auto& f : t.mono.factors())
      if (std::find(vs.begin(), vs.end(), f.var) == vs.end()) vs.push_back(f.var);
  std::sort(vs.begin(), vs.end(), var_before);
  return vs;
}

DiffPoly substitute(const DiffPoly& e, const std::map<std::string, Rational>& values) {
  std::vector<Term> out;
  out.reserve(e.size());
  for (const auto& t : e.terms()) {
    Term n{t.coeff, {}};
    for (const auto& f : t.mono.factors()) {
      if (f.var.is_const()) {
        if (auto it = values.find(const_name(f.var)); it != values.end()) {
          if (sgn(it->second) == 0) {
            if (f.exp < 0) throw Error("substituting zero into a negative power of " + it->first);
            n.coeff = 0;
            break;
          }
          Rational p(1);
          for (int i = 0; i < std::abs(f.exp); ++i) p *= it->second;
          n.coeff = f.exp > 0 ? Rational(n.coeff * p) : Rational(n.coeff / p);
          continue;
        }
      }
      n.mono.mul(f.var, f.exp);
    }
    if (sgn(n.coeff) != 0) out.push_back(std::move(n));
  }
  return combine_terms(std::move(out));
}

DiffPoly substitute(const DiffPoly& e, Var v, const DiffPoly& replacement) {
  DiffPoly result;
  std::map<int, DiffPoly> powers;
  for (const auto& t : e.terms()) {
    const int k = t.mono.exponent(v);
    if (k == 0) {
      result += DiffPoly::term(t.coeff, t.mono);
      continue;
    }
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, replacement.pow(k)).first;
    result += it->second.times(t.coeff, t.mono.without(v));
  }
  return result;
}

long double evaluate(const DiffPoly& e, const std::function<long double(Var)>& value) {
  long double sum = 0;
  for (const auto& t : e.terms()) {
    long double term = static_cast<long double>(t.coeff.get_num().get_d()) /
                       static_cast<long double>(t.coeff.get_den().get_d());
    for (const auto& f : t.mono.factors()) term *= std::pow(value(f.var), static_cast<long double>(f.exp));
    sum += term;
  }
  return sum;
}

}  // namespace integrable
