#include "fraylab/symfun.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fraylab {

Composition::Composition(std::initializer_list<int> p) : Composition(std::vector<int>(p)) {}

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
  for (int x : parts)
    if (x < 1) throw std::invalid_argument("composition parts must be positive");
}

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int Composition::offset(int j) const {
  if (j < 1 || j > size()) throw std::out_of_range("block index");
  int off = 1;
  for (int l = 1; l < j; ++l) off += (*this)[l];
  return off;
}

int Composition::block_of(int r) const {
  int acc = 0;
  for (int j = 1; j <= size(); ++j) {
    acc += (*this)[j];
    if (r <= acc) return j;
  }
  throw std::out_of_range("raw variable index");
}

Composition Composition::refine(int j, const Composition& sub) const {
  if (sub.total() != (*this)[j]) throw std::invalid_argument("refinement must preserve the part");
  std::vector<int> p(parts.begin(), parts.begin() + (j - 1));
  p.insert(p.end(), sub.parts.begin(), sub.parts.end());
  p.insert(p.end(), parts.begin() + j, parts.end());
  return Composition(p);
}

Composition Composition::concat(int n) const {
  auto p = parts;
  p.push_back(n);
  return Composition(p);
}

Composition Composition::concat(const Composition& o) const {
  auto p = parts;
  p.insert(p.end(), o.parts.begin(), o.parts.end());
  return Composition(p);
}

Composition Composition::ones(int n) { return Composition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

Composition Composition::parse(const std::string& s) {
  std::vector<int> p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad composition: " + s);
    p.push_back(v);
  }
  if (p.empty()) throw std::invalid_argument("empty composition");
  return Composition(p);
}

std::string to_string(const Composition& c) {
  std::string out = "(";
  for (int j = 0; j < c.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(c.parts[static_cast<std::size_t>(j)]);
  }
  return out + ")";
}

std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  if (n <= 0) return out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> p;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (mask & (1u << i)) {
        p.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    p.push_back(run);
    out.emplace_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Composition& Layout::side(int s) const {
  switch (s) {
    case 0: return left;
    case 1: return right;
    default: return middle;
  }
}

Poly raw_elementary(int k, const std::vector<Symbol>& vars) {
  if (k < 0 || k > static_cast<int>(vars.size())) return Poly();
  std::vector<Poly> e(static_cast<std::size_t>(k + 1));
  e[0] = Poly(1);
  for (const auto& v : vars) {
    Poly x = Poly::sym(v);
    for (int r = k; r >= 1; --r) e[r] += e[r - 1] * x;
  }
  return e[k];
}

Poly raw_complete(int k, const std::vector<Symbol>& vars) {
  if (k < 0) return Poly();
  std::vector<Poly> h(static_cast<std::size_t>(k + 1));
  h[0] = Poly(1);
  for (const auto& v : vars) {
    Poly x = Poly::sym(v);
    for (int r = 1; r <= k; ++r) h[r] += x * h[r - 1];
  }
  return h[k];
}

Poly raw_power_sum(int k, const std::vector<Symbol>& vars) {
  Poly r;
  for (const auto& v : vars) r += Poly::sym(v, k);
  return r;
}

std::vector<Symbol> raw_variables(const Composition& b, int j, int side) {
  std::vector<Symbol> out;
  int off = b.offset(j);
  for (int i = 0; i < b[j]; ++i) out.push_back(x_sym(off + i, side));
  return out;
}

namespace {

void block_tuples(const Composition& b, int first, int last, int remaining, int j,
                  const Poly& acc, int side, Poly& out) {
  if (j > last) {
    if (remaining == 0) out += acc;
    return;
  }
  int top = std::min(remaining, b[j]);
  for (int k = 0; k <= top; ++k) {
    Poly next = k == 0 ? acc : acc * Poly::sym(e_sym(j, k, side));
    block_tuples(b, first, last, remaining - k, j + 1, next, side, out);
  }
}

}  // namespace

Poly elementary_of_blocks(int i, const Composition& b, int first, int last, int side) {
  if (first < 1 || last > b.size() || first > last) throw std::out_of_range("block range");
  int size = 0;
  for (int j = first; j <= last; ++j) size += b[j];
  if (i < 0 || i > size) throw std::out_of_range("elementary degree out of range");
  Poly out;
  block_tuples(b, first, last, i, first, Poly(1), side, out);
  return out;
}

Poly elementary_of_total(int i, const Composition& b, int side) {
  return elementary_of_blocks(i, b, 1, b.size(), side);
}

Poly expand_to_x(const Poly& p, const Layout& layout) {
  return p.substitute([&](const Symbol& s) -> std::optional<Poly> {
    if (s.kind != SymKind::E && s.kind != SymKind::P) return std::nullopt;
    const Composition& b = layout.side(s.side);
    if (s.block < 1 || s.block > b.size()) throw std::out_of_range("symbol block outside layout");
    if (s.k < 1 || (s.kind == SymKind::E && s.k > b[s.block]))
      throw std::out_of_range("symbol index outside block size");
    auto vars = raw_variables(b, s.block, s.side);
    return s.kind == SymKind::E ? raw_elementary(s.k, vars) : raw_power_sum(s.k, vars);
  });
}

Poly power_sum_in_e(int k, int block, int side, int size) {
  if (k < 1 || k > size) throw std::out_of_range("power sum index out of range");
  std::vector<Poly> p(static_cast<std::size_t>(k + 1));
  auto e = [&](int r) { return r > size ? Poly() : Poly::sym(e_sym(block, r, side)); };
  for (int m = 1; m <= k; ++m) {
    Poly acc = e(m) * Rational(m % 2 ? m : -m);
    for (int r = 1; r < m; ++r) acc += e(r) * p[m - r] * Rational(r % 2 ? 1 : -1);
    p[m] = acc;
  }
  return p[k];
}

Poly elementary_in_p(int k, int block, int side, int size) {
  if (k < 1 || k > size) throw std::out_of_range("elementary index out of range");
  std::vector<Poly> e(static_cast<std::size_t>(k + 1));
  e[0] = Poly(1);
  for (int m = 1; m <= k; ++m) {
    Poly acc;
    for (int r = 1; r <= m; ++r)
      acc += e[m - r] * Poly::sym(p_sym(block, r, side)) * Rational(r % 2 ? 1 : -1);
    e[m] = acc * Rational(1, m);
  }
  return e[k];
}

Poly complete_in_e(int m, int block, int side, int size) {
  if (m < 0) return Poly();
  std::vector<Poly> h(static_cast<std::size_t>(m + 1));
  h[0] = Poly(1);
  for (int d = 1; d <= m; ++d) {
    Poly acc;
    for (int r = 1; r <= std::min(d, size); ++r)
      acc += Poly::sym(e_sym(block, r, side)) * h[d - r] * Rational(r % 2 ? 1 : -1);
    h[d] = acc;
  }
  return h[m];
}

Poly p_to_e(const Poly& p, const Layout& layout) {
  return p.substitute([&](const Symbol& s) -> std::optional<Poly> {
    if (s.kind != SymKind::P) return std::nullopt;
    return power_sum_in_e(s.k, s.block, s.side, layout.side(s.side)[s.block]);
  });
}

Poly e_to_p(const Poly& p, const Layout& layout) {
  return p.substitute([&](const Symbol& s) -> std::optional<Poly> {
    if (s.kind != SymKind::E) return std::nullopt;
    return elementary_in_p(s.k, s.block, s.side, layout.side(s.side)[s.block]);
  });
}

const Poly& AFamily::at(int i, int j, int k) const {
  static const Poly zero;
  auto it = a_.find({i, j, k});
  return it == a_.end() ? zero : it->second;
}

void AFamily::set(int i, int j, int k, Poly p) {
  if (p.is_zero())
    a_.erase({i, j, k});
  else
    a_[{i, j, k}] = std::move(p);
}

Poly AFamily::identity_lhs(int i) const {
  Poly lhs;
  for (int j = 1; j <= b_.size(); ++j)
    for (int k = 1; k <= b_[j]; ++k) {
      const Poly& a = at(i, j, k);
      if (a.is_zero()) continue;
      lhs += a * (Poly::sym(e_sym(j, k, 0)) - Poly::sym(e_sym(j, k, 1)));
    }
  return lhs;
}

bool AFamily::identity_holds() const {
  Layout layout = Layout::balanced(b_);
  for (int i = 1; i <= b_.total(); ++i) {
    Poly rhs = elementary_of_total(i, b_, 0) - elementary_of_total(i, b_, 1);
    if (expand_to_x(identity_lhs(i), layout) != expand_to_x(rhs, layout)) return false;
  }
  return true;
}

namespace {

void telescope(const Composition& b, int i, std::vector<int>& ks, int j, int remaining,
               std::map<std::array<int, 3>, Poly>& acc) {
  int m = b.size();
  if (j > m) {
    if (remaining != 0) return;
    for (int pos = 1; pos <= m; ++pos) {
      int kp = ks[static_cast<std::size_t>(pos)];
      if (kp == 0) continue;
      Poly coeff(1);
      for (int l = 1; l <= m; ++l) {
        int kl = ks[static_cast<std::size_t>(l)];
        if (l == pos || kl == 0) continue;
        coeff *= Poly::sym(e_sym(l, kl, l < pos ? 1 : 0));
      }
      acc[{i, pos, kp}] += coeff;
    }
    return;
  }
  for (int k = 0; k <= std::min(remaining, b[j]); ++k) {
    ks[static_cast<std::size_t>(j)] = k;
    telescope(b, i, ks, j + 1, remaining - k, acc);
  }
  ks[static_cast<std::size_t>(j)] = 0;
}

}  // namespace

AFamily a_family(const Composition& b) {
  AFamily fam(b);
  std::map<std::array<int, 3>, Poly> acc;
  std::vector<int> ks(static_cast<std::size_t>(b.size() + 1), 0);
  for (int i = 1; i <= b.total(); ++i) telescope(b, i, ks, 1, i, acc);
  for (auto& [key, p] : acc) fam.set(key[0], key[1], key[2], std::move(p));
  return fam;
}

AFamily a_thin_recursive(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::map<std::pair<int, int>, Poly> a;
  a[{1, 1}] = Poly(1);
  for (int m = 1; m < n; ++m) {
    std::vector<Symbol> xs;
    for (int j = 1; j <= m; ++j) xs.push_back(e_sym(j, 1, 0));
    Poly xprime = Poly::sym(e_sym(m + 1, 1, 1));
    std::map<std::pair<int, int>, Poly> next;
    auto old = [&](int i, int j) {
      auto it = a.find({i, j});
      return it == a.end() ? Poly() : it->second;
    };
    for (int i = 1; i <= m + 1; ++i) {
      for (int j = 1; j <= m; ++j) {
        Poly v = xprime * old(i - 1, j) + old(i, j);
        if (!v.is_zero()) next[{i, j}] = v;
      }
      Poly v = raw_elementary(i - 1, xs);
      if (!v.is_zero()) next[{i, m + 1}] = v;
    }
    a = std::move(next);
  }
  AFamily fam(Composition::ones(n));
  for (auto& [key, p] : a) fam.set(key.first, key.second, 1, p);
  return fam;
}

std::vector<Poly> g_polys(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Poly xp = Poly::sym(e_sym(2, 1, 1));
  auto e = [&](int r) { return r == 0 ? Poly(1) : Poly::sym(e_sym(1, r, 0)); };
  std::vector<Poly> g;
  for (int i = 1; i <= n; ++i) {
    Poly acc;
    for (int j = 1; j <= i; ++j) acc += (-xp).pow(j - 1) * e(i - j);
    g.push_back(acc);
  }
  g.push_back(e(n) - xp * g.back());
  return g;
}

Poly difference_symmetric(DiffKind kind, int j, int block, int size_left, int size_right) {
  if (j < 0) throw std::invalid_argument("negative degree");
  Poly out;
  for (int b = 0; b <= j; ++b) {
    int a = j - b;
    Poly term;
    if (kind == DiffKind::E) {
      if (a > size_left) continue;
      Poly ea = a == 0 ? Poly(1) : Poly::sym(e_sym(block, a, 0));
      term = ea * complete_in_e(b, block, 1, size_right);
    } else {
      if (b > size_right) continue;
      Poly eb = b == 0 ? Poly(1) : Poly::sym(e_sym(block, b, 1));
      term = complete_in_e(a, block, 0, size_left) * eb;
    }
    out += b % 2 ? -term : term;
  }
  return out;
}

Poly psi_change(int i, int a) {
  if (i < 1 || i > a) throw std::out_of_range("psi index out of range");
  Poly out;
  for (int j = i; j <= a; ++j) {
    Poly hd = difference_symmetric(DiffKind::H, j - i, 1, a, a);
    for (int k = j; k <= a; ++k) {
      Poly ek = k == j ? Poly(1) : Poly::sym(e_sym(1, k - j, 0));
      Rational c(i, j);
      if ((j - 1) % 2) c = -c;
      out += hd * ek * Poly::sym(u_sym(k)) * c;
    }
  }
  return out;
}

Poly rho_change(int i, int a) {
  if (i < 1 || i > a) throw std::out_of_range("rho index out of range");
  Poly out;
  for (int j = i; j <= a; ++j) {
    Poly h = complete_in_e(j - i, 1, 0, a);
    for (int k = j; k <= a; ++k) {
      Poly ed = difference_symmetric(DiffKind::E, k - j, 1, a, a);
      Rational c(j, k);
      if ((i + k - j - 1) % 2) c = -c;
      out += h * ed * Poly::sym(v_sym(k)) * c;
    }
  }
  return out;
}

Poly delta_e_curvature(int a, int block) {
  Poly f;
  for (int k = 1; k <= a; ++k)
    f += (Poly::sym(e_sym(block, k, 0)) - Poly::sym(e_sym(block, k, 1))) * Poly::sym(u_sym(k));
  return f;
}

Poly delta_p_curvature(int a, int block) {
  Poly f;
  for (int k = 1; k <= a; ++k)
    f += (Poly::sym(p_sym(block, k, 0)) - Poly::sym(p_sym(block, k, 1))) *
         Poly::sym(v_sym(k)) * Rational(1, k);
  return f;
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

void shuffle_subset(std::mt19937_64& rng, std::vector<Rational>& vals,
                    const std::vector<int>& idx) {
  for (std::size_t r = idx.size(); r > 1; --r) {
    std::size_t s = draw(rng, r);
    std::swap(vals[static_cast<std::size_t>(idx[r - 1])], vals[static_cast<std::size_t>(idx[s])]);
  }
}

std::vector<Rational> distinct_values(std::mt19937_64& rng, int n) {
  std::set<Rational> seen;
  std::vector<Rational> out;
  while (static_cast<int>(out.size()) < n) {
    long num = static_cast<long>(draw(rng, 2001)) - 1000;
    long den = static_cast<long>(draw(rng, 29)) + 1;
    Rational v(num, den);
    v.canonicalize();
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<VanishingPoint> vanishing_locus_sampler(const Layout& layout,
                                                    const std::vector<std::vector<int>>& groups,
                                                    int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("count must be positive");
  int n = layout.left.total();
  if (layout.right.total() != n) throw std::invalid_argument("alphabet sizes differ");
  bool has_middle = !layout.middle.parts.empty();
  if (has_middle && (layout.middle.total() != n || groups.size() != 1))
    throw std::invalid_argument("middle alphabet needs a single locus group");
  std::mt19937_64 rng(seed);
  std::vector<VanishingPoint> pts;
  for (int c = 0; c < count; ++c) {
    VanishingPoint pt;
    pt.left = distinct_values(rng, n);
    pt.right = pt.left;
    for (const auto& g : groups) {
      std::vector<int> idx;
      for (int j : g) {
        for (int i = 0; i < layout.left[j]; ++i) idx.push_back(layout.left.offset(j) - 1 + i);
      }
      if (groups.size() > 1) {
        for (int j : g)
          if (layout.left[j] != layout.right[j])
            throw std::invalid_argument("grouped blocks must match on both sides");
      }
      shuffle_subset(rng, pt.right, idx);
    }
    if (has_middle) {
      pt.middle = pt.left;
      std::vector<int> all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), 0);
      shuffle_subset(rng, pt.middle, all);
    }
    pts.push_back(std::move(pt));
  }
  return pts;
}

std::vector<VanishingPoint> vanishing_locus_sampler(const Composition& b, int count,
                                                    std::uint64_t seed) {
  std::vector<int> all;
  for (int j = 1; j <= b.size(); ++j) all.push_back(j);
  return vanishing_locus_sampler(Layout::balanced(b), {all}, count, seed);
}

PointEvaluator::PointEvaluator(const Layout& layout, const VanishingPoint& pt)
    : layout_(layout), pt_(pt) {}

std::optional<Rational> PointEvaluator::value(const Symbol& s) const {
  if (!s.is_ring()) return std::nullopt;
  auto it = cache_.find(s);
  if (it != cache_.end()) return it->second;
  const std::vector<Rational>& vals = s.side == 0 ? pt_.left : s.side == 1 ? pt_.right : pt_.middle;
  Rational v;
  if (s.kind == SymKind::X) {
    v = vals.at(static_cast<std::size_t>(s.block - 1));
  } else {
    const Composition& b = layout_.side(s.side);
    int off = b.offset(s.block) - 1;
    int size = b[s.block];
    if (s.kind == SymKind::E) {
      std::vector<Rational> e(static_cast<std::size_t>(s.k + 1), Rational(0));
      e[0] = 1;
      for (int i = 0; i < size; ++i)
        for (int r = s.k; r >= 1; --r) e[r] += e[r - 1] * vals[static_cast<std::size_t>(off + i)];
      v = e[static_cast<std::size_t>(s.k)];
    } else if (s.kind == SymKind::P) {
      v = 0;
      for (int i = 0; i < size; ++i) {
        Rational p = 1;
        for (int r = 0; r < s.k; ++r) p *= vals[static_cast<std::size_t>(off + i)];
        v += p;
      }
    } else {
      return std::nullopt;
    }
  }
  cache_.emplace(s, v);
  return v;
}

Rational evaluate_at(const Poly& p, const Layout& layout, const VanishingPoint& pt) {
  PointEvaluator ev(layout, pt);
  return p.evaluate([&](const Symbol& s) {
    auto v = ev.value(s);
    if (!v) throw std::invalid_argument("cannot evaluate non-ring symbol " + to_string(s));
    return *v;
  });
}

}  // namespace fraylab
