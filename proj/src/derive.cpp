#include "integrable/derive.hpp"

#include "integrable/error.hpp"
#include "integrable/grading.hpp"
#include "integrable/parse.hpp"
#include "integrable/reference.hpp"
#include "integrable/solver.hpp"

namespace integrable {

namespace {

Erratum compare_item(Family family, int base, std::string item, const ReferenceItem& ref, const DiffPoly& derived) {
  const DiffPoly published = reference_poly(ref);
  Erratum e{family, base, std::move(item), "", ref.text, print(derived), ""};
  if (published == derived) return e;
  e.kind = published == -derived ? "sign" : "coefficient";
  e.detail = "published - derived = " + print(published - derived);
  return e;
}

std::vector<Erratum> readings(Family family, int base) {
  const auto& ref = reference_tables(family, base);
  std::vector<Erratum> out;
  auto note = [&](const std::string& item, const ReferenceItem& r) {
    if (!r.printed.empty()) out.push_back({family, base, item, "reading", r.printed, r.text, "printed form does not parse"});
  };
  for (const auto& [i, r] : ref.local) note("R^(" + std::to_string(i) + ")", r);
  for (std::size_t k = 0; k < ref.sigma.size(); ++k) note("sigma^(" + std::to_string(k + 1) + ")", ref.sigma[k]);
  for (const auto& [m, r] : ref.flows) note("u_t," + std::to_string(m), r);
  return out;
}

struct Pieces {
  // Local image sum_i R^(i) D^i G with the unknown coefficients, plus the
  // fixed leading term.
  DiffPoly local;
  // sigma_k antiderivative(gamma_k G), one per nonlocal pair.
  std::vector<DiffPoly> nonlocal;
};

}  // namespace

RecursionDerivation derive_recursion_coefficients(Family family, int base, bool with_witness) {
  const JetContext ctx(family, base);
  const int step = recursion_step(family);
  const int a_degree = step;
  const FlowRecord seed = seed_flow(family, base);

  // Independent targets: symmetries of the seed.
  std::map<int, FlowRecord> flows{{seed.order, seed}};
  auto flow = [&](int m) -> const FlowRecord& {
    auto it = flows.find(m);
    if (it == flows.end()) it = flows.emplace(m, symmetry_flow(seed, m)).first;
    return it->second;
  };

  std::vector<std::pair<int, int>> pairs;
  std::vector<PseudoDiffOperator::Nonlocal> nonlocal_base;
  if (family == Family::KdV) {
    pairs = {{3, 5}, {5, 7}};
    nonlocal_base.push_back({seed.rhs, variational_derivative(parse("a^-1"), ctx)});
  } else {
    pairs = {{5, 11}, {7, 13}, {11, 17}};
    const DiffPoly rho1 = parse("a^-1*ab^2") * DiffPoly::jet(base + 1, 2);
    nonlocal_base.push_back({-flow(7).rhs, variational_derivative(parse("a^-1"), ctx)});
    nonlocal_base.push_back({-flow(5).rhs, variational_derivative(rho1, ctx)});
  }

  // Local ansatz R^(i), i < step: level step - i, weight 0.
  std::map<int, Ansatz> coeff;
  std::vector<Var> unknowns;
  for (int i = 0; i < step; ++i) {
    Ansatz a = graded_ansatz(family, base, step - i, a_degree, 0, "_k" + std::to_string(i) + "_");
    unknowns.insert(unknowns.end(), a.unknowns.begin(), a.unknowns.end());
    coeff.emplace(i, std::move(a));
  }
  const auto scalars = make_unknowns("_sigma", nonlocal_base.size());
  const auto lambdas = make_unknowns("_lambda", pairs.size());
  unknowns.insert(unknowns.end(), scalars.begin(), scalars.end());
  unknowns.insert(unknowns.end(), lambdas.begin(), lambdas.end());

  const DiffPoly leading = DiffPoly::var(Var::a(), step);
  LinearSystem sys;
  sys.unknowns = unknowns;
  std::vector<DiffPoly> identities;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const DiffPoly& g = flow(pairs[p].first).rhs;
    DiffPoly id;
    DiffPoly dg = g;
    for (int i = 0; i <= step; ++i) {
      if (i > 0) dg = total_derivative(dg, ctx);
      id += multiply(i == step ? leading : coeff.at(i).expr, dg);
    }
    for (std::size_t k = 0; k < nonlocal_base.size(); ++k)
      id += multiply(DiffPoly::var(scalars[k]),
                     multiply(nonlocal_base[k].sigma, antiderivative(multiply(nonlocal_base[k].gamma, g), ctx)));
    id -= multiply(DiffPoly::var(lambdas[p]), flow(pairs[p].second).rhs);
    append_identity(sys, id);
    identities.push_back(std::move(id));
  }

  const Solution sol = solve(sys);
  if (std::holds_alternative<Inconsistent>(sol)) throw Error("recursion ansatz is inconsistent");
  if (std::holds_alternative<Parametric>(sol))
    throw Error("recursion ansatz leaves " + std::to_string(std::get<Parametric>(sol).free.size()) + " free constants");
  const auto& values = std::get<Unique>(sol).values;

  RecursionDerivation out;
  out.unknowns = unknowns.size();
  out.equations = sys.equations.size();
  {
    linalg::Eliminator el(unknowns.size());
    for (const auto& row : sys.equations) el.add(row);
    out.rank = el.rank();
  }
  out.consistent = true;
  for (const auto& id : identities) out.consistent = out.consistent && substitute_solution(id, sys, values).is_zero();
  for (std::size_t p = 0; p < pairs.size(); ++p)
    out.lambdas.push_back(values[unknowns.size() - pairs.size() + p]);

  RecursionOperator& r = out.op;
  r = {{}, family, base, step};
  r.op.local.emplace(step, leading);
  for (int i = 0; i < step; ++i) {
    DiffPoly c = substitute_solution(coeff.at(i).expr, sys, values);
    if (!c.is_zero()) r.op.local.emplace(i, std::move(c));
  }
  for (std::size_t k = 0; k < nonlocal_base.size(); ++k) {
    const Rational s = values[unknowns.size() - pairs.size() - scalars.size() + k];
    r.op.nonlocal.push_back({nonlocal_base[k].sigma * s, nonlocal_base[k].gamma});
  }

  const auto& ref = reference_tables(family, base);
  for (const auto& [i, item] : ref.local) {
    auto it = r.op.local.find(i);
    Erratum e = compare_item(family, base, "R^(" + std::to_string(i) + ")", item,
                             it == r.op.local.end() ? DiffPoly() : it->second);
    if (!e.kind.empty()) out.errata.push_back(std::move(e));
  }
  for (std::size_t k = 0; k < ref.sigma.size(); ++k) {
    Erratum e = compare_item(family, base, "sigma^(" + std::to_string(k + 1) + ")", ref.sigma[k],
                             r.op.nonlocal[k].sigma);
    if (!e.kind.empty()) out.errata.push_back(std::move(e));
  }

  if (with_witness) {
    const int w = family == Family::KdV ? 7 : 13;
    out.witness_order = w;
    try {
      const FlowRecord image = apply_recursion(r, flow(w));
      out.witness = image.rhs == flow(w + step).rhs;
    } catch (const Error&) {
      out.witness = false;
    }
  }
  return out;
}

std::vector<Erratum> flow_errata(Family family, int base) {
  const auto& ref = reference_tables(family, base);
  std::vector<Erratum> out = readings(family, base);
  // Reading errata for operator entries belong to errata(); keep flows only.
  std::erase_if(out, [](const Erratum& e) { return e.item.rfind("u_t,", 0) != 0; });
  const int top = ref.flows.rbegin()->first;
  for (const auto& f : generate_hierarchy(family, base, top)) {
    auto it = ref.flows.find(f.order);
    if (it == ref.flows.end()) continue;
    Erratum e = compare_item(family, base, "u_t," + std::to_string(f.order), it->second, f.rhs);
    if (!e.kind.empty()) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Erratum> errata(Family family, int base) {
  std::vector<Erratum> out = readings(family, base);
  std::erase_if(out, [](const Erratum& e) { return e.item.rfind("u_t,", 0) == 0; });
  const auto d = derive_recursion_coefficients(family, base, false);
  out.insert(out.end(), d.errata.begin(), d.errata.end());
  const auto f = flow_errata(family, base);
  out.insert(out.end(), f.begin(), f.end());
  return out;
}

}  // namespace integrable
