#include "fraylab/linalg.hpp"

#include <stdexcept>

namespace fraylab {

SparseVec sparse_from_map(const std::map<int, Rational>& m) {
  SparseVec v;
  v.reserve(m.size());
  for (const auto& [i, c] : m)
    if (c != 0) v.emplace_back(i, c);
  return v;
}

SparseVec axpy(const SparseVec& y, const Rational& a, const SparseVec& x) {
  SparseVec r;
  r.reserve(y.size() + x.size());
  auto i = y.begin();
  auto j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->first < j->first)) {
      r.push_back(*i++);
    } else if (i == y.end() || j->first < i->first) {
      r.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Rational c = i->second + a * j->second;
      if (c != 0) r.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
  std::map<int, Rational> dummy;
  return reduce_tracked(v, dummy);
}

SparseVec Echelon::reduce_tracked(const SparseVec& v, std::map<int, Rational>& coeffs) const {
  if (rows_.empty()) return v;
  std::map<int, Rational> w;
  for (const auto& [i, c] : v) w.emplace(i, c);
  SparseVec out;
  while (!w.empty()) {
    auto it = w.begin();
    int col = it->first;
    Rational c = it->second;
    auto piv = pivot_.find(col);
    if (piv == pivot_.end()) {
      out.emplace_back(col, std::move(c));
      w.erase(it);
      continue;
    }
    const SparseVec& row = rows_[static_cast<std::size_t>(piv->second)];
    int tag = tags_[static_cast<std::size_t>(piv->second)];
    if (tag >= 0) coeffs[tag] += c;
    w.erase(it);
    for (std::size_t r = 1; r < row.size(); ++r) {
      auto [jt, ins] = w.try_emplace(row[r].first, 0);
      jt->second -= c * row[r].second;
      if (jt->second == 0) w.erase(jt);
    }
  }
  return out;
}

void Echelon::insert_reduced(SparseVec v, int tag) {
  if (v.empty()) throw std::logic_error("inserting zero row");
  Rational lead = v.front().second;
  if (lead != 1)
    for (auto& [i, c] : v) c /= lead;
  pivot_.emplace(v.front().first, static_cast<int>(rows_.size()));
  rows_.push_back(std::move(v));
  tags_.push_back(tag);
}

bool Echelon::insert(const SparseVec& v, int tag) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  insert_reduced(std::move(r), tag);
  return true;
}

int rank_of(const std::vector<SparseVec>& vectors) {
  Echelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

KernelImage kernel_and_image(const std::vector<SparseVec>& columns) {
  // Augmented rows: image part in even slots [0, n), combination part shifted past it.
  int offset = 0;
  for (const auto& c : columns)
    for (const auto& [i, x] : c) offset = std::max(offset, i + 1);
  KernelImage out;
  Echelon aug;
  for (std::size_t s = 0; s < columns.size(); ++s) {
    SparseVec v = columns[s];
    v.emplace_back(offset + static_cast<int>(s), Rational(1));
    SparseVec r = aug.reduce(v);
    if (!r.empty() && r.front().first >= offset) {
      SparseVec k;
      Rational lead = r.front().second;
      for (const auto& [i, c] : r) k.emplace_back(i - offset, c / lead);
      out.kernel.push_back(std::move(k));
      // Keep it as a row too so later kernel vectors stay independent.
      aug.insert_reduced(std::move(r));
    } else if (!r.empty()) {
      SparseVec img;
      for (const auto& [i, c] : r)
        if (i < offset) img.emplace_back(i, c);
      aug.insert_reduced(std::move(r));
      out.image.insert_reduced(std::move(img));
    }
  }
  return out;
}

HomologyBasis::HomologyBasis(const std::vector<SparseVec>& boundaries,
                             const std::vector<SparseVec>& cycles) {
  for (const auto& b : boundaries) combined_.insert(b, -1);
  for (const auto& z : cycles) {
    SparseVec r = combined_.reduce(z);
    if (r.empty()) continue;
    int tag = static_cast<int>(reps_.size());
    combined_.insert_reduced(r, tag);
    reps_.push_back(combined_.rows().back());
  }
}

SparseVec HomologyBasis::coordinates(const SparseVec& z) const {
  std::map<int, Rational> coeffs;
  SparseVec rem = combined_.reduce_tracked(z, coeffs);
  if (!rem.empty()) throw std::logic_error("vector is not a cycle");
  return sparse_from_map(coeffs);
}

}  // namespace fraylab
