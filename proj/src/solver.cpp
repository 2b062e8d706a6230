#include "integrable/solver.hpp"

#include <unordered_map>

#include "integrable/error.hpp"
#include "integrable/parse.hpp"

namespace integrable {

void append_identity(LinearSystem& sys, const DiffPoly& identity) {
  std::unordered_map<std::uint32_t, std::size_t> column;
  for (std::size_t i = 0; i < sys.unknowns.size(); ++i) column.emplace(sys.unknowns[i].code(), i);

  // Terms arrive in canonical order; equations are keyed by the monomial left
  // after removing the unknown, first occurrence fixing the equation order.
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  std::vector<std::map<std::size_t, Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Monomial> origins;
  for (const auto& t : identity.terms()) {
    std::optional<std::size_t> col;
    for (const auto& f : t.mono.factors()) {
      auto it = column.find(f.var.code());
      if (it == column.end()) continue;
      if (f.exp != 1 || col)
        throw NonlinearInUnknowns("identity is not affine in the unknowns at term " +
                                  print(DiffPoly::term(t.coeff, t.mono)));
      col = it->second;
    }
    const Monomial key = col ? t.mono.without(sys.unknowns[*col]) : t.mono;
    auto [it, fresh] = index.emplace(key, rows.size());
    if (fresh) {
      rows.emplace_back();
      rhs.emplace_back(0);
      origins.push_back(key);
    }
    if (col) {
      rows[it->second][*col] += t.coeff;
    } else {
      rhs[it->second] -= t.coeff;
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    linalg::Row row;
    for (auto& [c, v] : rows[r])
      if (sgn(v) != 0) row.entries.emplace_back(c, std::move(v));
    row.rhs = std::move(rhs[r]);
    sys.equations.push_back(std::move(row));
    sys.origins.push_back(std::move(origins[r]));
  }
}

LinearSystem match_to_system(const DiffPoly& identity, std::span<const Var> unknowns) {
  LinearSystem sys;
  sys.unknowns.assign(unknowns.begin(), unknowns.end());
  append_identity(sys, identity);
  return sys;
}

Solution solve(const LinearSystem& sys) {
  linalg::Eliminator elim(sys.unknowns.size());
  for (const auto& row : sys.equations)
    if (!elim.add(row)) return Inconsistent{};
  auto x = elim.particular();
  if (elim.rank() == sys.unknowns.size()) return Unique{std::move(*x)};
  return Parametric{std::move(*x), elim.free_columns(), elim.nullspace()};
}

std::map<std::string, Rational> assignment(const LinearSystem& sys, const std::vector<Rational>& values) {
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < sys.unknowns.size(); ++i) out.emplace(sys.unknowns[i].name(), values.at(i));
  return out;
}

DiffPoly substitute_solution(const DiffPoly& e, const LinearSystem& sys, const std::vector<Rational>& values) {
  return substitute(e, assignment(sys, values));
}

std::vector<Var> make_unknowns(std::string_view prefix, std::size_t count) {
  std::vector<Var> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(Var::constant(std::string(prefix) + std::to_string(i)));
  return out;
}

}  // namespace integrable
