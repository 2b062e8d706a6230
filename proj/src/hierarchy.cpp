#include "integrable/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "integrable/derive.hpp"
#include "integrable/error.hpp"
#include "integrable/grading.hpp"
#include "integrable/parse.hpp"
#include "integrable/reference.hpp"
#include "integrable/solver.hpp"

namespace integrable {

std::string describe(const Provenance& p) {
  struct V {
    std::string operator()(const Seed& s) const { return "seed: " + s.label; }
    std::string operator()(const Generated& g) const {
      return "generated from order " + std::to_string(g.from_order) + ", lambda " + to_string(g.lambda);
    }
    std::string operator()(const Symmetry& s) const {
      return "symmetry of the order-" + std::to_string(s.seed_order) + " seed";
    }
  };
  return std::visit(V{}, p);
}

int recursion_step(Family family) { return family == Family::KdV ? 2 : 6; }

bool admissible_order(Family family, int order) {
  if (order < 1 || order % 2 == 0) return false;
  return family == Family::KdV || order % 3 != 0;
}

FlowRecord seed_flow(Family family, int base) {
  JetContext ctx(family, base);
  const auto& ref = reference_tables(family, base);
  const auto& [order, item] = *ref.seeds.begin();
  return {family, base, order, reference_poly(item), Seed{"order-" + std::to_string(order) + " seed"}};
}

std::vector<FlowRecord> chain_seeds(Family family, int base) {
  std::vector<FlowRecord> out{seed_flow(family, base)};
  if (family == Family::SKK) {
    const auto& ref = reference_tables(family, base);
    FlowRecord second{family, base, 7, reference_poly(ref.flows.at(7)), Seed{"order-7 listing"}};
    if (!commutator(out[0], second).is_zero())
      throw Error("listed order-7 flow does not commute with the seed");
    out.push_back(std::move(second));
  }
  return out;
}

std::vector<Monomial> graded_coefficients(Family family, int factors, int a_degree, int weight) {
  std::vector<Monomial> out;
  auto emit = [&](int j, int k) {
    const int n = a_degree - j + 4 * k;
    Monomial m;
    m.mul(Var::a(), n);
    m.mul(Var::ab(), j);
    if (k != 0) m.mul(var_P(), k);
    out.push_back(std::move(m));
  };
  if (family == Family::SKK) {
    emit(factors - weight, 0);
  } else {
    for (int k = -1; 2 * k <= factors - weight; ++k) {
      const int j = factors - weight - 2 * k;
      if (j >= 0) emit(j, k);
    }
  }
  return out;
}

Ansatz graded_ansatz(Family family, int base, int level, int a_degree, int weight, std::string_view prefix) {
  std::vector<LevelMonomial> shapes;
  if (level == 0) {
    shapes.push_back(LevelMonomial{base, {}});
  } else {
    shapes = level_monomials(base, level);
  }
  std::vector<Term> terms;
  for (const auto& shape : shapes) {
    int factors = 0;
    for (const auto& [j, e] : shape.factors) factors += e;
    const Monomial body = shape.monomial();
    for (const auto& c : graded_coefficients(family, factors, a_degree, weight)) terms.push_back({1, body.times(c)});
  }
  Ansatz out;
  out.unknowns = make_unknowns(prefix, terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Monomial m = terms[i].mono;
    m.mul(out.unknowns[i], 1);
    terms[i].mono = std::move(m);
  }
  out.expr = combine_terms(std::move(terms));
  return out;
}

FlowRecord symmetry_flow(const FlowRecord& seed, int order) {
  const JetContext ctx = seed.context();
  const int b = seed.base;
  if (order < b) throw Error("symmetry order below the base level");
  const Ansatz ans = graded_ansatz(seed.family, b, order - b, order, 1, "_s");

  LinearSystem sys;
  sys.unknowns = ans.unknowns;
  // Normalization: the u_m coefficient is a^m.
  const DiffPoly lead_coeff = coefficient_of(coefficient_of(ans.expr, Var::jet(order), 1), Var::a(), order);
  bool normalized = false;
  for (const auto& t : lead_coeff.terms()) {
    if (t.mono.factors().size() == 1 && t.mono.factors()[0].var.is_const() && t.mono.factors()[0].exp == 1 &&
        t.mono.factors()[0].var != var_P()) {
      append_identity(sys, DiffPoly::var(t.mono.factors()[0].var) - 1);
      normalized = true;
      break;
    }
  }
  if (!normalized) throw Error("ansatz has no a^m u_m term");
  append_identity(sys, commutator(seed.rhs, ans.expr, ctx));

  const Solution sol = solve(sys);
  if (std::holds_alternative<Inconsistent>(sol))
    throw Error("no order-" + std::to_string(order) + " symmetry in the graded ansatz");
  if (std::holds_alternative<Parametric>(sol))
    throw Error("order-" + std::to_string(order) + " symmetry is not unique in the graded ansatz");
  const auto& values = std::get<Unique>(sol).values;
  return {seed.family, b, order, substitute_solution(ans.expr, sys, values), Symmetry{seed.order}};
}

namespace {

DiffPoly variational_of(std::string_view density, const JetContext& ctx) {
  return variational_derivative(parse(density), ctx);
}

}  // namespace

RecursionOperator published_recursion_operator(Family family, int base) {
  const JetContext ctx(family, base);
  const auto& ref = reference_tables(family, base);
  RecursionOperator r{{}, family, base, recursion_step(family)};
  for (const auto& [i, item] : ref.local) r.op.local.emplace(i, reference_poly(item));
  for (std::size_t k = 0; k < ref.sigma.size(); ++k)
    r.op.nonlocal.push_back({reference_poly(ref.sigma[k]), variational_of(ref.gamma_densities[k], ctx)});
  return r;
}

RecursionOperator recursion_operator(Family family, int base) {
  static std::mutex mu;
  static std::map<std::pair<Family, int>, RecursionOperator> cache;
  JetContext check(family, base);
  {
    std::lock_guard lock(mu);
    auto it = cache.find({family, base});
    if (it != cache.end()) return it->second;
  }
  RecursionOperator r = derive_recursion_coefficients(family, base).op;
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{family, base}, std::move(r)).first->second;
}

FlowRecord apply_recursion(const RecursionOperator& r, const FlowRecord& f) {
  if (r.family != f.family || r.base != f.base) throw Error("operator and flow belong to different contexts");
  const JetContext ctx = f.context();
  const int target = f.order + r.step;
  const DiffPoly image = apply_operator(r.op, f.rhs, ctx);
  if (image.is_zero() || !is_level_homogeneous(image, f.base, target - f.base))
    throw NotProportional("R(F) is not level homogeneous of level " + std::to_string(target - f.base));
  const DiffPoly lead = coefficient_of(image, Var::jet(target), 1);
  Monomial expect = Monomial::of(Var::a(), target);
  if (lead.size() != 1 || !(lead.terms()[0].mono == expect))
    throw NotProportional("leading coefficient of R(F) is not a multiple of a^" + std::to_string(target));
  const Rational lambda = lead.terms()[0].coeff;
  return {f.family, f.base, target, image * (1 / lambda), Generated{f.order, lambda}};
}

DiffPoly commutator(const DiffPoly& f, const DiffPoly& g, const JetContext& ctx) {
  return time_derivative(f, g, ctx) - time_derivative(g, f, ctx);
}

DiffPoly commutator(const FlowRecord& f, const FlowRecord& g) {
  if (f.family != g.family || f.base != g.base) throw Error("flows belong to different contexts");
  return commutator(f.rhs, g.rhs, f.context());
}

std::vector<FlowRecord> generate_hierarchy(Family family, int base, int max_order) {
  static std::mutex mu;
  static std::map<std::tuple<Family, int, int>, std::vector<FlowRecord>> cache;
  JetContext check(family, base);
  {
    std::lock_guard lock(mu);
    auto it = cache.find({family, base, max_order});
    if (it != cache.end()) return it->second;
  }
  std::vector<FlowRecord> out;
  const auto seeds = chain_seeds(family, base);
  bool need_operator = false;
  for (const auto& s : seeds) need_operator = need_operator || s.order + recursion_step(family) <= max_order;
  std::optional<RecursionOperator> r;
  if (need_operator) r = recursion_operator(family, base);
  for (const auto& s : seeds) {
    if (s.order > max_order) continue;
    FlowRecord f = s;
    out.push_back(f);
    while (f.order + recursion_step(family) <= max_order) {
      f = apply_recursion(*r, f);
      out.push_back(f);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.order < y.order; });
  std::lock_guard lock(mu);
  return cache.emplace(std::tuple{family, base, max_order}, std::move(out)).first->second;
}

FlowRecord potentiate(const FlowRecord& f) {
  if (f.base - 1 < 3) throw OrderUnderflow("potentiation would drop the base below 3");
  JetContext target(f.family, f.base - 1);  // may throw Unsupported
  for (const auto& t : f.rhs.terms())
    if (t.mono.contains(Var::jet(0))) throw Error("potentiation needs a flow free of u_0");
  const JetContext ctx = f.context();
  DiffPoly rhs = shift_jet(total_derivative(f.rhs, ctx), -1);
  return {f.family, f.base - 1, f.order, std::move(rhs), f.provenance};
}

}  // namespace integrable
