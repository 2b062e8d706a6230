#include "integrable/jet.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include "integrable/error.hpp"
#include "integrable/linalg.hpp"

namespace integrable {

std::string_view to_string(Family f) { return f == Family::KdV ? "kdv" : "skk"; }

Family parse_family(std::string_view text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "kdv") return Family::KdV;
  if (lower == "skk") return Family::SKK;
  throw Error("unknown family '" + std::string(text) + "' (expected kdv or skk)");
}

JetContext::JetContext(Family family, int base, int max_order)
    : family_(family), base_(base), max_order_(max_order) {
  if (base <= 2)
    throw Unsupported("base level " + std::to_string(base) +
                      " is not supported: base levels b <= 2 are excluded from the classification");
  if (family == Family::KdV && base != 3)
    throw Unsupported("KdV-type equations exist only at base level 3 (got " + std::to_string(base) + ")");
  if (family == Family::SKK && base > 5)
    throw Unsupported("SKK-type equations exist only at base levels 3, 4, 5 (got " + std::to_string(base) + ")");
  if (max_order <= base || max_order > kRingMaxJetOrder)
    throw Error("max_order " + std::to_string(max_order) + " out of range");
}

namespace {

void check_order(int k, const JetContext& ctx) {
  if (k > ctx.max_order())
    throw OrderOverflow("total derivative produced u" + std::to_string(k) + ", beyond max order " +
                        std::to_string(ctx.max_order()));
}

// Appends the chain-rule part of d/du_b (through a and ab) of one term,
// multiplied by `extra` (pass Var::jet(b+1) for the total derivative).
void chain_terms(const Term& t, const JetContext& ctx, const Var* extra, std::vector<Term>& out) {
  const int ea = t.mono.exponent(Var::a());
  const int eb = t.mono.exponent(Var::ab());
  if (ea != 0) {
    Monomial m = t.mono;
    m.mul(Var::a(), -1);
    m.mul(Var::ab(), 1);
    if (extra) m.mul(*extra, 1);
    out.push_back({t.coeff * ea, std::move(m)});
  }
  if (eb != 0) {
    if (ctx.family() == Family::SKK) {
      Monomial m = t.mono;
      m.mul(Var::ab(), 1);
      m.mul(Var::a(), -1);
      if (extra) m.mul(*extra, 1);
      out.push_back({t.coeff * (4 * eb), std::move(m)});
    } else {
      Monomial m = t.mono;
      m.mul(Var::ab(), 1);
      m.mul(Var::a(), -1);
      if (extra) m.mul(*extra, 1);
      out.push_back({t.coeff * (2 * eb), std::move(m)});
      Monomial n = t.mono;
      n.mul(Var::ab(), -1);
      n.mul(Var::a(), 5);
      n.mul(var_P(), 1);
      if (extra) n.mul(*extra, 1);
      out.push_back({t.coeff * ratio(eb, 4), std::move(n)});
    }
  }
}

DiffPoly explicit_partial(const DiffPoly& e, Var v) {
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    const int k = t.mono.exponent(v);
    if (k == 0) continue;
    Monomial m = t.mono;
    m.mul(v, -1);
    out.push_back({t.coeff * k, std::move(m)});
  }
  return combine_terms(std::move(out));
}

}  // namespace

DiffPoly partial_derivative(const DiffPoly& e, Var v, const JetContext& ctx) {
  if (v.is_jet() && v.order() == ctx.base()) {
    std::vector<Term> out;
    for (const auto& t : e.terms()) {
      if (const int k = t.mono.exponent(v); k != 0) {
        Monomial m = t.mono;
        m.mul(v, -1);
        out.push_back({t.coeff * k, std::move(m)});
      }
      chain_terms(t, ctx, nullptr, out);
    }
    return combine_terms(std::move(out));
  }
  return explicit_partial(e, v);
}

DiffPoly total_derivative(const DiffPoly& e, const JetContext& ctx) {
  std::vector<Term> out;
  out.reserve(e.size() * 3);
  const Var next_base = Var::jet(ctx.base() + 1);
  for (const auto& t : e.terms()) {
    for (const auto& f : t.mono.factors()) {
      if (!f.var.is_jet()) continue;
      const int k = f.var.order();
      check_order(k + 1, ctx);
      Monomial m = t.mono;
      m.mul(f.var, -1);
      m.mul(Var::jet(k + 1), 1);
      out.push_back({t.coeff * f.exp, std::move(m)});
    }
    if (t.mono.has_coeff_symbols()) {
      check_order(ctx.base() + 1, ctx);
      chain_terms(t, ctx, &next_base, out);
    }
  }
  return combine_terms(std::move(out));
}

DiffPoly total_derivative(const DiffPoly& e, int times, const JetContext& ctx) {
  DiffPoly r = e;
  for (int i = 0; i < times && !r.is_zero(); ++i) r = total_derivative(r, ctx);
  return r;
}

std::vector<int> dependency_orders(const DiffPoly& e, const JetContext& ctx) {
  std::set<int> orders;
  for (const auto& t : e.terms()) {
    for (const auto& f : t.mono.factors()) {
      if (f.var.is_jet()) {
        orders.insert(f.var.order());
      } else if (f.var.is_coeff()) {
        orders.insert(ctx.base());
      }
    }
  }
  return {orders.begin(), orders.end()};
}

DiffPoly time_derivative(const DiffPoly& e, const DiffPoly& flow, const JetContext& ctx) {
  const auto orders = dependency_orders(e, ctx);
  DiffPoly result;
  DiffPoly dflow = flow;
  int at = 0;
  for (int i : orders) {
    for (; at < i; ++at) dflow = total_derivative(dflow, ctx);
    result += multiply(partial_derivative(e, Var::jet(i), ctx), dflow);
  }
  return result;
}

PseudoDiffOperator frechet(const DiffPoly& flow, const JetContext& ctx) {
  PseudoDiffOperator op;
  for (int i : dependency_orders(flow, ctx)) {
    DiffPoly c = partial_derivative(flow, Var::jet(i), ctx);
    if (!c.is_zero()) op.local.emplace(i, std::move(c));
  }
  return op;
}

DiffPoly adjoint_apply(const DiffPoly& flow, const DiffPoly& gamma, const JetContext& ctx) {
  DiffPoly result;
  for (int i : dependency_orders(flow, ctx)) {
    DiffPoly term = total_derivative(multiply(partial_derivative(flow, Var::jet(i), ctx), gamma), i, ctx);
    if (i % 2 == 0) {
      result -= term;
    } else {
      result += term;
    }
  }
  return result;
}

DiffPoly variational_derivative(const DiffPoly& rho, const JetContext& ctx) {
  DiffPoly result;
  for (int i : dependency_orders(rho, ctx)) {
    DiffPoly term = total_derivative(partial_derivative(rho, Var::jet(i), ctx), i, ctx);
    if (i % 2 == 0) {
      result += term;
    } else {
      result -= term;
    }
  }
  return result;
}

bool is_exact(const DiffPoly& e, const JetContext& ctx) { return variational_derivative(e, ctx).is_zero(); }

// ------------------------------------------------------------ integration

namespace {

// Exponents of u_b, a, ab and (KdV only) P: the part of a monomial on which
// d/du_b acts.
struct BaseKey {
  int ub = 0, a = 0, ab = 0, p = 0;
  bool ring_free() const { return a == 0 && ab == 0 && p == 0; }
  auto operator<=>(const BaseKey&) const = default;
};

struct MonoLess {
  bool operator()(const Monomial& x, const Monomial& y) const { return compare(x, y) < 0; }
};

std::pair<BaseKey, Monomial> split(const Monomial& m, const JetContext& ctx) {
  BaseKey k;
  Monomial rest;
  const Var ub = ctx.base_var();
  for (const auto& f : m.factors()) {
    if (f.var == ub) {
      k.ub = f.exp;
    } else if (f.var == Var::a()) {
      k.a = f.exp;
    } else if (f.var == Var::ab()) {
      k.ab = f.exp;
    } else if (ctx.family() == Family::KdV && f.var == var_P()) {
      k.p = f.exp;
    } else {
      rest.mul(f.var, f.exp);
    }
  }
  return {k, rest};
}

Monomial join(const BaseKey& k, const Monomial& rest, const JetContext& ctx) {
  Monomial m = rest;
  m.mul(ctx.base_var(), k.ub);
  m.mul(Var::a(), k.a);
  m.mul(Var::ab(), k.ab);
  m.mul(var_P(), k.p);
  return m;
}

// d/du_b of u_b^k a^n ab^m P^p.
std::vector<std::pair<Rational, BaseKey>> base_image(const BaseKey& k, Family family) {
  std::vector<std::pair<Rational, BaseKey>> out;
  if (k.ub != 0) out.push_back({Rational(k.ub), {k.ub - 1, k.a, k.ab, k.p}});
  if (family == Family::SKK) {
    if (const int c = k.a + 4 * k.ab; c != 0) out.push_back({Rational(c), {k.ub, k.a - 1, k.ab + 1, k.p}});
  } else {
    if (const int c = k.a + 2 * k.ab; c != 0) out.push_back({Rational(c), {k.ub, k.a - 1, k.ab + 1, k.p}});
    if (k.ab != 0) out.push_back({ratio(k.ab, 4), {k.ub, k.a + 5, k.ab - 1, k.p + 1}});
  }
  return out;
}

// Monomials whose u_b-derivative can contain the target.
std::vector<BaseKey> base_candidates(const BaseKey& k, Family family, int max_ub) {
  std::vector<BaseKey> out;
  const BaseKey raised{k.ub + 1, k.a, k.ab, k.p};
  if (k.ring_free()) {
    if (raised.ub <= max_ub) out.push_back(raised);
    return out;
  }
  out.push_back({k.ub, k.a + 1, k.ab - 1, k.p});
  if (family == Family::KdV) out.push_back({k.ub, k.a - 5, k.ab + 1, k.p - 1});
  if (raised.ub <= max_ub) out.push_back(raised);
  return out;
}

// Solves d/du_b H = target over a window of candidate monomials; nullopt if
// no primitive exists in the window.
std::optional<std::map<BaseKey, Rational>> integrate_window(const std::map<BaseKey, Rational>& target,
                                                            Family family) {
  int top_ub = 0;
  for (const auto& [k, c] : target) top_ub = std::max(top_ub, k.ub);
  const int rounds = 2 * top_ub + (family == Family::SKK ? 2 : 12);
  std::vector<BaseKey> rows;
  std::map<BaseKey, std::size_t> row_index;
  std::vector<BaseKey> cols;
  std::map<BaseKey, std::size_t> col_index;
  auto add_row = [&](const BaseKey& k) {
    if (row_index.emplace(k, rows.size()).second) rows.push_back(k);
  };
  for (const auto& [k, c] : target) add_row(k);
  std::size_t expanded = 0;
  for (int r = 0; r < rounds && expanded < rows.size(); ++r) {
    const std::size_t end = rows.size();
    for (; expanded < end; ++expanded) {
      for (const auto& cand : base_candidates(rows[expanded], family, top_ub + 1)) {
        if (!col_index.emplace(cand, cols.size()).second) continue;
        cols.push_back(cand);
        for (const auto& [c, img] : base_image(cand, family)) add_row(img);
      }
    }
  }
  std::vector<linalg::Row> system(rows.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [c, img] : base_image(cols[j], family)) system[row_index.at(img)].entries.emplace_back(j, c);
  linalg::Eliminator elim(cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = system[i];
    if (auto it = target.find(rows[i]); it != target.end()) row.rhs = it->second;
    if (!elim.add(std::move(row))) return std::nullopt;
  }
  auto x = elim.particular();
  if (!x) return std::nullopt;
  std::map<BaseKey, Rational> out;
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (sgn((*x)[j]) != 0) out.emplace(cols[j], (*x)[j]);
  return out;
}

}  // namespace

DiffPoly integrate_base(const DiffPoly& g, const JetContext& ctx) {
  std::map<Monomial, std::map<BaseKey, Rational>, MonoLess> groups;
  for (const auto& t : g.terms()) {
    auto [k, rest] = split(t.mono, ctx);
    if (k.ub < 0) throw NonIntegrableMonomial("negative power of u" + std::to_string(ctx.base()) + " in integrand");
    groups[rest][k] += t.coeff;
  }
  std::vector<Term> out;
  for (const auto& [rest, target] : groups) {
    auto sol = integrate_window(target, ctx.family());
    if (!sol)
      throw NonIntegrableMonomial("no primitive with respect to u" + std::to_string(ctx.base()) +
                                  " in the coefficient ring");
    for (const auto& [k, c] : *sol) out.push_back({c, join(k, rest, ctx)});
  }
  return combine_terms(std::move(out));
}

DiffPoly antiderivative(const DiffPoly& e, const JetContext& ctx) {
  const int b = ctx.base();
  auto fail = [&](const std::string& why) -> DiffPoly {
    if (!is_exact(e, ctx)) throw NotExact("expression is not a total derivative (" + why + ")");
    throw NonIntegrableMonomial("integration by parts stalled on an exact expression: " + why);
  };
  DiffPoly h;
  DiffPoly rem = e;
  while (!rem.is_zero()) {
    const int s = max_jet_order(rem);
    const bool coeff = has_coeff_symbols(rem);
    if (coeff && s <= b) {
      // What is left is sum_K K D(X_K) with each K a u_b-constant of the
      // coefficient ring; integrate the cofactor of every coefficient monomial.
      std::map<Monomial, std::vector<Term>, MonoLess> parts;
      for (const auto& t : rem.terms()) {
        auto [k, rest] = split(t.mono, ctx);
        parts[join(k, Monomial{}, ctx)].push_back({t.coeff, rest});
      }
      DiffPoly tail;
      try {
        for (auto& [k, cofactor] : parts)
          tail += antiderivative(combine_terms(std::move(cofactor)), ctx).times(Rational(1), k);
      } catch (const Error&) {
        return fail("remainder depends on u_b through a at top order");
      }
      if (total_derivative(tail, ctx) != rem) return fail("remainder depends on u_b through a at top order");
      h += tail;
      break;
    }
    const int top = s;
    if (top <= 0) return fail("remainder has no derivative to integrate");
    const Var top_var = Var::jet(top);
    if (degree_in(rem, top_var) > 1 || min_degree_in(rem, top_var) < 0)
      return fail("remainder is nonlinear in u" + std::to_string(top));
    const DiffPoly g = coefficient_of(rem, top_var, 1);
    const Var w = Var::jet(top - 1);
    DiffPoly prim;
    if (top - 1 == b) {
      try {
        prim = integrate_base(g, ctx);
      } catch (const NonIntegrableMonomial& ex) {
        return fail(ex.what());
      }
    } else {
      std::vector<Term> out;
      out.reserve(g.size());
      for (const auto& t : g.terms()) {
        const int k = t.mono.exponent(w);
        Monomial m = t.mono;
        m.mul(w, 1);
        out.push_back({t.coeff / (k + 1), std::move(m)});
      }
      prim = combine_terms(std::move(out));
    }
    h += prim;
    rem -= total_derivative(prim, ctx);
    if (degree_in(rem, top_var) > 0) return fail("top order did not cancel");
  }
  return h;
}

DiffPoly apply_operator(const PseudoDiffOperator& op, const DiffPoly& e, const JetContext& ctx) {
  DiffPoly result;
  DiffPoly de = e;
  int at = 0;
  for (const auto& [k, c] : op.local) {
    for (; at < k; ++at) de = total_derivative(de, ctx);
    result += multiply(c, de);
  }
  for (const auto& nl : op.nonlocal) {
    if (nl.sigma.is_zero()) continue;
    result += multiply(nl.sigma, antiderivative(multiply(nl.gamma, e), ctx));
  }
  return result;
}

}  // namespace integrable
