#include "integrable/linalg.hpp"

#include <algorithm>

namespace integrable::linalg {

bool Eliminator::add(Row row) {
  // Dense-in-a-map working copy; rows here are short (tens of entries).
  std::map<std::size_t, Rational> work;
  for (auto& [col, value] : row.entries)
    if (sgn(value) != 0) work[col] += value;
  Rational rhs = std::move(row.rhs);

  for (auto it = work.begin(); it != work.end();) {
    if (sgn(it->second) == 0) {
      it = work.erase(it);
      continue;
    }
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const Rational factor = it->second;
    const Row& prow = rows_[p->second].second;
    for (const auto& [col, value] : prow.entries) work[col] -= factor * value;
    rhs -= factor * prow.rhs;
    // The pivot column cancelled exactly; restart after it.
    it = work.upper_bound(p->first);
  }
  std::erase_if(work, [](const auto& kv) { return sgn(kv.second) == 0; });

  if (work.empty()) {
    if (sgn(rhs) != 0) consistent_ = false;
    return consistent_;
  }
  const std::size_t pivot = work.begin()->first;
  const Rational inv = 1 / work.begin()->second;
  Row stored;
  stored.entries.reserve(work.size());
  for (auto& [col, value] : work) stored.entries.emplace_back(col, value * inv);
  stored.rhs = rhs * inv;
  pivots_.emplace(pivot, rows_.size());
  rows_.emplace_back(pivot, std::move(stored));
  return consistent_;
}

std::vector<std::size_t> Eliminator::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < columns_; ++c)
    if (!pivots_.contains(c)) out.push_back(c);
  return out;
}

std::vector<Rational> Eliminator::back_substitute(const std::vector<Rational>& free_values,
                                                  bool homogeneous) const {
  std::vector<Rational> x(columns_);
  const auto free = free_columns();
  for (std::size_t i = 0; i < free.size(); ++i) x[free[i]] = free_values[i];
  // A stored row references only columns that were not pivots when it was
  // added, so later rows are resolved first.
  for (auto r = rows_.rbegin(); r != rows_.rend(); ++r) {
    const auto& [pivot, row] = *r;
    Rational v = homogeneous ? Rational(0) : row.rhs;
    for (const auto& [col, value] : row.entries)
      if (col != pivot) v -= value * x[col];
    x[pivot] = v;
  }
  return x;
}

std::optional<std::vector<Rational>> Eliminator::particular() const {
  if (!consistent_) return std::nullopt;
  return back_substitute(std::vector<Rational>(columns_ - pivots_.size()), false);
}

std::vector<std::vector<Rational>> Eliminator::nullspace() const {
  const std::size_t nfree = columns_ - pivots_.size();
  std::vector<std::vector<Rational>> basis;
  basis.reserve(nfree);
  for (std::size_t i = 0; i < nfree; ++i) {
    std::vector<Rational> v(nfree);
    v[i] = 1;
    basis.push_back(back_substitute(v, true));
  }
  return basis;
}

}  // namespace integrable::linalg
