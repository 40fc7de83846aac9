#include "fraylab/ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace fraylab {

RingSpec::RingSpec(std::string id, std::vector<Symbol> generators, std::vector<Poly> relations,
                   Options opts)
    : id_(std::move(id)), gens_(std::move(generators)), rels_(std::move(relations)),
      opts_(std::move(opts)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Symbol& g = gens_[i];
    if (!g.is_ring()) throw std::invalid_argument("ring generators must be ring symbols");
    if (g.deg.a != 0 || g.deg.t != 0 || g.deg.q <= 0 || g.deg.q % 2 != 0)
      throw std::invalid_argument("generator degrees must be positive even powers of q");
    if (!index_.emplace(g, static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate generator");
    weight_.push_back(g.deg.q / 2);
  }
  for (auto& r : rels_) {
    if (r.is_zero()) continue;
    if (!r.is_homogeneous()) throw std::invalid_argument("relations must be homogeneous");
    for (const auto& [m, c] : r.terms())
      for (const auto& [s, e] : m.factors())
        if (!is_generator(s)) throw std::invalid_argument("relation uses a non-generator");
  }
}

void RingSpec::enumerate(int d, std::vector<std::vector<int>>& out) const {
  out.clear();
  if (d < 0 || d % 2 != 0) return;
  int target = d / 2;
  std::vector<int> e(gens_.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
    if (i == gens_.size()) {
      if (rem == 0) out.push_back(e);
      return;
    }
    for (int p = 0; p * weight_[i] <= rem; ++p) {
      e[i] = p;
      rec(i + 1, rem - p * weight_[i]);
    }
    e[i] = 0;
  };
  rec(0, target);
}

std::vector<int> RingSpec::exponents(const Monomial& m) const {
  std::vector<int> e(gens_.size(), 0);
  for (const auto& [s, p] : m.factors()) {
    auto it = index_.find(s);
    if (it == index_.end())
      throw std::invalid_argument("symbol " + to_string(s) + " is not a generator of " + id_);
    e[static_cast<std::size_t>(it->second)] = p;
  }
  return e;
}

Monomial RingSpec::monomial(const std::vector<int>& e) const {
  std::vector<std::pair<Symbol, int>> f;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) f.emplace_back(gens_[i], e[i]);
  return Monomial::from_factors(std::move(f));
}

std::unique_ptr<RingSpec::Piece> RingSpec::build_piece(int d) const {
  auto pc = std::make_unique<Piece>();
  pc->degree = d;
  enumerate(d, pc->monomials);
  // Larger monomials come first so they become pivots: middle-alphabet degree, then
  // right-alphabet degree, then reverse lexicographic exponents.
  auto key = [&](const std::vector<int>& e) {
    int mid = 0, right = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (gens_[i].side == 2) mid += e[i] * weight_[i];
      if (gens_[i].side == 1) right += e[i] * weight_[i];
    }
    return std::make_tuple(mid, right, e);
  };
  std::sort(pc->monomials.begin(), pc->monomials.end(),
            [&](const auto& x, const auto& y) { return key(x) > key(y); });
  for (std::size_t i = 0; i < pc->monomials.size(); ++i)
    pc->index.emplace(pc->monomials[i], static_cast<int>(i));

  std::vector<std::vector<int>> multipliers;
  for (const auto& r : rels_) {
    if (r.is_zero()) continue;
    int dr = r.degree()->q;
    if (dr > d) continue;
    enumerate(d - dr, multipliers);
    std::vector<std::pair<std::vector<int>, Rational>> rterms;
    for (const auto& [m, c] : r.terms()) rterms.emplace_back(exponents(m), c);
    for (const auto& mult : multipliers) {
      std::map<int, Rational> row;
      for (const auto& [e, c] : rterms) {
        std::vector<int> prod = e;
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += mult[i];
        row[pc->index.at(prod)] += c;
      }
      pc->relations.insert(sparse_from_map(row));
    }
  }
  for (std::size_t i = 0; i < pc->monomials.size(); ++i) {
    int idx = static_cast<int>(i);
    if (pc->relations.is_pivot(idx)) continue;
    pc->standard_pos.emplace(idx, static_cast<int>(pc->standard.size()));
    pc->standard.push_back(idx);
    pc->standard_monomials.push_back(monomial(pc->monomials[i]));
  }
  return pc;
}

const RingSpec::Piece& RingSpec::piece(int d) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pieces_.find(d);
    if (it != pieces_.end()) return *it->second;
  }
  auto built = build_piece(d);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, ins] = pieces_.emplace(d, std::move(built));
  return *it->second;
}

int RingSpec::graded_dim(int d) const {
  if (d < 0 || d % 2 != 0) return 0;
  return static_cast<int>(piece(d).standard.size());
}

const std::vector<Monomial>& RingSpec::standard_monomials(int d) const {
  static const std::vector<Monomial> none;
  if (d < 0 || d % 2 != 0) return none;
  return piece(d).standard_monomials;
}

SparseVec RingSpec::raw_coordinates(const Piece& pc, const Poly& p) const {
  std::map<int, Rational> v;
  for (const auto& [m, c] : p.terms()) {
    auto it = pc.index.find(exponents(m));
    if (it == pc.index.end()) throw std::invalid_argument("term outside the graded piece");
    v[it->second] += c;
  }
  return sparse_from_map(v);
}

SparseVec RingSpec::coordinates(const Poly& p, int d) const {
  if (p.is_zero()) return {};
  if (d < 0 || d % 2 != 0) throw std::invalid_argument("polynomial outside graded pieces");
  const Piece& pc = piece(d);
  SparseVec red = pc.relations.reduce(raw_coordinates(pc, p));
  SparseVec out;
  for (const auto& [i, c] : red) out.emplace_back(pc.standard_pos.at(i), c);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

Poly RingSpec::from_coordinates(const SparseVec& v, int d) const {
  Poly p;
  if (v.empty()) return p;
  const Piece& pc = piece(d);
  for (const auto& [i, c] : v) p.add_term(pc.standard_monomials.at(static_cast<std::size_t>(i)), c);
  return p;
}

Poly RingSpec::normal_form(const Poly& p) const {
  // Group by (parameter monomial, ring degree).
  std::map<std::pair<Monomial, int>, Poly> groups;
  for (const auto& [m, c] : p.terms()) {
    auto [ring, par] = m.split();
    groups[{par, ring.degree().q}].add_term(ring, c);
  }
  Poly out;
  for (const auto& [key, ring_part] : groups) {
    Poly nf = from_coordinates(coordinates(ring_part, key.second), key.second);
    for (const auto& [m, c] : nf.terms()) out.add_term(m * key.first, c);
  }
  return out;
}

Rational parameter_sample_value(const Symbol& s, int i) {
  long h = static_cast<long>(s.kind) * 131 + s.block * 37 + s.k * 11 + s.side * 5 + i * 17;
  long num = (h * 7919) % 89 + 2;
  long den = (h * 104729) % 13 + 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool RingSpec::vanishes_at_samples(const Poly& p) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!samples_ready_) {
      auto pts = vanishing_locus_sampler(opts_.layout, opts_.locus_groups, opts_.samples, opts_.seed);
      for (const auto& pt : pts) {
        PointEvaluator ev(opts_.layout, pt);
        std::map<Symbol, Rational> vals;
        for (const auto& g : gens_) vals.emplace(g, *ev.value(g));
        sample_values_.push_back(std::move(vals));
      }
      samples_ready_ = true;
    }
  }
  for (std::size_t i = 0; i < sample_values_.size(); ++i) {
    const auto& vals = sample_values_[i];
    Rational v = p.evaluate([&](const Symbol& s) {
      if (!s.is_ring()) return parameter_sample_value(s, static_cast<int>(i));
      auto it = vals.find(s);
      if (it == vals.end()) throw std::invalid_argument("symbol " + to_string(s) + " outside " + id_);
      return it->second;
    });
    if (v != 0) return false;
  }
  return true;
}

bool RingSpec::is_zero(const Poly& p) const {
  if (p.is_zero()) return true;
  bool nf_zero = normal_form(p).is_zero();
  if (!has_locus()) return nf_zero;
  bool sampled = vanishes_at_samples(p);
  if (nf_zero && !sampled)
    throw std::logic_error("normal form and vanishing-locus evaluation disagree in " + id_);
  return nf_zero && sampled;
}

}  // namespace fraylab
