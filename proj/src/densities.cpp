#include "integrable/densities.hpp"

#include "integrable/error.hpp"
#include "integrable/grading.hpp"
#include "integrable/linalg.hpp"
#include "integrable/solver.hpp"

namespace integrable {

int DensityLabel::target_level() const {
  switch (kind) {
    case DensityKind::RhoMinus1:
      return 0;
    case DensityKind::Rho1:
      return 2;
    case DensityKind::Rho3:
      return 4;
    case DensityKind::Generic:
      return level;
  }
  return 0;
}

DiffPoly canonical_rho_minus1(const DiffPoly& flow, int m, const JetContext& ctx) {
  if (m < 1) throw Error("order must be positive");
  const DiffPoly sep = partial_derivative(flow, Var::jet(m), ctx);
  if (sep.size() != 1) throw NotAMonomial("dF/du_" + std::to_string(m) + " is not a single monomial");
  const Term& t = sep.terms()[0];
  Rational root;
  if (!exact_root(t.coeff, static_cast<unsigned>(m), root))
    throw RootNotExact("coefficient has no exact " + std::to_string(m) + "-th root");
  Monomial out;
  for (const auto& f : t.mono.factors()) {
    if (f.exp % m != 0) throw RootNotExact("exponent of " + f.var.name() + " is not divisible by the order");
    out.mul(f.var, -f.exp / m);
  }
  return DiffPoly::term(1 / root, std::move(out));
}

Conservation check_conserved(const DiffPoly& rho, const DiffPoly& flow, const JetContext& ctx) {
  Conservation c;
  const DiffPoly rho_t = time_derivative(rho, flow, ctx);
  c.residual = variational_derivative(rho_t, ctx);
  c.conserved = c.residual.is_zero();
  if (c.conserved) c.flux = antiderivative(rho_t, ctx);
  return c;
}

CosymmetryCheck check_cosymmetry(const DiffPoly& gamma, const DiffPoly& flow, const JetContext& ctx) {
  CosymmetryCheck c;
  c.residual = time_derivative(gamma, flow, ctx) - adjoint_apply(flow, gamma, ctx);
  c.holds = c.residual.is_zero();
  return c;
}

Density density_ansatz(DensityLabel label, const JetContext& ctx, std::string_view prefix, const MonomialSpan& span) {
  Density d;
  d.label = label;
  if (label.kind == DensityKind::RhoMinus1) {
    d.expr = DiffPoly::var(Var::a(), -1);
    return d;
  }
  const int b = ctx.base();
  std::vector<Monomial> shapes;
  switch (label.kind) {
    case DensityKind::Rho1:
      shapes.push_back(Monomial::of(Var::jet(b + 1), 2));
      break;
    case DensityKind::Rho3:
      shapes.push_back(Monomial::of(Var::jet(b + 2), 2));
      shapes.push_back(Monomial::of(Var::jet(b + 1), 4));
      break;
    default:
      if (label.level < 1) throw Error("generic density level must be positive");
      for (const auto& lm : level_monomials(b, label.level)) shapes.push_back(lm.monomial());
  }
  std::vector<Term> terms;
  for (const auto& shape : shapes)
    for (int k = span.p_min; k <= span.p_max; ++k)
      for (int j = span.ab_min; j <= span.ab_max; ++j)
        for (int i = span.a_min; i <= span.a_max; ++i) {
          Monomial m = shape;
          m.mul(Var::a(), i);
          m.mul(Var::ab(), j);
          if (k != 0) m.mul(var_P(), k);
          terms.push_back({1, std::move(m)});
        }
  d.unknowns = make_unknowns(prefix, terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i].mono.mul(d.unknowns[i], 1);
  d.expr = combine_terms(std::move(terms));
  return d;
}

bool is_trivial(const DiffPoly& rho, const JetContext& ctx) { return is_exact(rho, ctx); }

namespace {

// Splits an ansatz into (unknown, basis element) pairs.
std::vector<std::pair<Var, DiffPoly>> columns(const Density& ansatz) {
  std::vector<std::pair<Var, DiffPoly>> out;
  for (Var u : ansatz.unknowns) out.emplace_back(u, coefficient_of(ansatz.expr, u, 1));
  return out;
}

// Nullspace of the map c -> sum c_i image_i, one vector per basis element.
std::vector<std::vector<Rational>> kernel(const std::vector<Var>& unknowns, const std::vector<DiffPoly>& images) {
  DiffPoly identity;
  for (std::size_t i = 0; i < unknowns.size(); ++i)
    identity += images[i].times(1, Monomial::of(unknowns[i]));
  const LinearSystem sys = match_to_system(identity, unknowns);
  const Solution sol = solve(sys);
  if (std::holds_alternative<Parametric>(sol)) return std::get<Parametric>(sol).basis;
  return {};
}

DiffPoly combine(const std::vector<std::pair<Var, DiffPoly>>& cols, const std::vector<Rational>& v) {
  DiffPoly out;
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (sgn(v[i]) != 0) out += cols[i].second * v[i];
  return out;
}

}  // namespace

std::vector<DiffPoly> conserved_instances(const Density& ansatz, const DiffPoly& flow, const JetContext& ctx) {
  if (ansatz.unknowns.empty()) {
    if (check_conserved(ansatz.expr, flow, ctx).conserved) return {ansatz.expr};
    return {};
  }
  const auto cols = columns(ansatz);
  std::vector<DiffPoly> images;
  images.reserve(cols.size());
  for (const auto& [u, e] : cols) images.push_back(variational_derivative(time_derivative(e, flow, ctx), ctx));
  std::vector<DiffPoly> out;
  for (const auto& v : kernel(ansatz.unknowns, images)) out.push_back(combine(cols, v));
  return out;
}

std::vector<DiffPoly> nontrivial_conserved_instances(const Density& ansatz, const DiffPoly& flow,
                                                     const JetContext& ctx) {
  if (ansatz.unknowns.empty()) {
    auto all = conserved_instances(ansatz, flow, ctx);
    if (!all.empty() && is_trivial(all[0], ctx)) return {};
    return all;
  }
  const auto cols = columns(ansatz);
  std::vector<DiffPoly> exact_images, cons_images;
  for (const auto& [u, e] : cols) {
    exact_images.push_back(variational_derivative(e, ctx));
    cons_images.push_back(variational_derivative(time_derivative(e, flow, ctx), ctx));
  }
  const auto exact = kernel(ansatz.unknowns, exact_images);
  const auto conserved = kernel(ansatz.unknowns, cons_images);
  // Reduce the conserved basis modulo the exact subspace.
  linalg::Eliminator span(cols.size());
  auto row_of = [](const std::vector<Rational>& v) {
    linalg::Row r;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) r.entries.emplace_back(i, v[i]);
    return r;
  };
  for (const auto& v : exact) span.add(row_of(v));
  std::vector<DiffPoly> out;
  for (const auto& v : conserved) {
    const std::size_t before = span.rank();
    span.add(row_of(v));
    if (span.rank() > before) out.push_back(combine(cols, v));
  }
  return out;
}

}  // namespace integrable
