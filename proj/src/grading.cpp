#include "integrable/grading.hpp"

#include <algorithm>

#include "integrable/error.hpp"

namespace integrable {

int Partition::total() const {
  int s = 0;
  for (std::size_t j = 0; j < multiplicity.size(); ++j) s += static_cast<int>(j + 1) * multiplicity[j];
  return s;
}

namespace {

void extend(int remaining, int max_part, std::vector<int>& mult, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back({mult});
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++mult[part - 1];
    extend(remaining - part, part, mult, out);
    --mult[part - 1];
  }
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 1) throw Error("partitions: n must be at least 1 (got " + std::to_string(n) + ")");
  if (n > 80) throw Error("partitions: n = " + std::to_string(n) + " is too large to enumerate");
  std::vector<Partition> out;
  std::vector<int> mult(static_cast<std::size_t>(n), 0);
  extend(n, n, mult, out);
  std::sort(out.begin(), out.end(),
            [](const Partition& x, const Partition& y) { return x.multiplicity > y.multiplicity; });
  return out;
}

Integer partition_count(int n) {
  if (n < 0) return 0;
  std::vector<Integer> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int k = part; k <= n; ++k) p[k] += p[k - part];
  return p[n];
}

int LevelMonomial::level() const {
  int s = 0;
  for (const auto& [j, e] : factors) s += j * e;
  return s;
}

Monomial LevelMonomial::monomial() const {
  Monomial m;
  for (const auto& [j, e] : factors) m.mul(Var::jet(base + j), e);
  return m;
}

std::vector<LevelMonomial> level_monomials(int b, int n) {
  if (b < 0) throw Error("level_monomials: base must be non-negative");
  std::vector<LevelMonomial> out;
  for (const auto& p : partitions(n)) {
    LevelMonomial lm{b, {}};
    for (std::size_t j = 0; j < p.multiplicity.size(); ++j)
      if (p.multiplicity[j] != 0) lm.factors.emplace(static_cast<int>(j + 1), p.multiplicity[j]);
    out.push_back(std::move(lm));
  }
  return out;
}

int level_of(const Monomial& m, int b) {
  int s = 0;
  for (const auto& f : m.factors())
    if (f.var.is_jet() && f.var.order() > b) s += (f.var.order() - b) * f.exp;
  return s;
}

std::map<int, DiffPoly> level_decompose(const DiffPoly& e, int b) {
  std::map<int, std::vector<Term>> raw;
  for (const auto& t : e.terms()) raw[level_of(t.mono, b)].push_back(t);
  std::map<int, DiffPoly> out;
  // Subsequences of a canonical term list are canonical.
  for (auto& [level, terms] : raw) out.emplace(level, DiffPoly::from_canonical(std::move(terms)));
  return out;
}

DiffPoly top_level(const DiffPoly& e, int b) {
  auto parts = level_decompose(e, b);
  if (parts.empty()) return {};
  return parts.rbegin()->second;
}

bool is_level_homogeneous(const DiffPoly& e, int b, int level) {
  return std::all_of(e.terms().begin(), e.terms().end(),
                     [&](const Term& t) { return level_of(t.mono, b) == level; });
}

}  // namespace integrable
