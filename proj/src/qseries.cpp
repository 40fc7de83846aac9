#include "fraylab/qseries.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace fraylab {

Laurent::Laurent(const Rational& c) {
  if (c != 0) c_.emplace(MultiDegree{}, c);
}

Laurent Laurent::monomial(const MultiDegree& d, const Rational& c) {
  Laurent l;
  l.add(d, c);
  return l;
}

Rational Laurent::coeff(const MultiDegree& d) const {
  auto it = c_.find(d);
  return it == c_.end() ? Rational(0) : it->second;
}

void Laurent::add(const MultiDegree& d, const Rational& c) {
  if (c == 0) return;
  auto [it, ins] = c_.try_emplace(d, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [d, c] : o.c_) add(d, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [d, c] : o.c_) add(d, -c);
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& [d, c] : r.c_) c = -c;
  return r;
}

Laurent operator*(const Laurent& x, const Laurent& y) {
  Laurent r;
  for (const auto& [dx, cx] : x.c_)
    for (const auto& [dy, cy] : y.c_) r.add(dx + dy, cx * cy);
  return r;
}

Laurent Laurent::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Laurent r(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Laurent Laurent::shifted(const MultiDegree& d) const {
  Laurent r;
  for (const auto& [x, c] : c_) r.c_.emplace(x + d, c);
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  for (const auto& [x, c] : c_) r.c_.emplace(MultiDegree{x.a, -x.q, x.t}, c);
  return r;
}

bool Laurent::q_only() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.first.a == 0 && kv.first.t == 0; });
}

Laurent Laurent::divide_exact(const Laurent& d) const {
  if (!q_only() || !d.q_only()) throw std::invalid_argument("divide_exact needs q-only input");
  if (d.is_zero()) throw std::domain_error("division by zero");
  Laurent rem = *this, quo;
  const auto& [dlead, dc] = *d.c_.rbegin();
  int guard = 0;
  int span = is_zero() ? 0 : c_.rbegin()->first.q - c_.begin()->first.q;
  while (!rem.is_zero()) {
    if (++guard > span + 2) throw std::domain_error("inexact Laurent division");
    const auto& [rlead, rc] = *rem.c_.rbegin();
    Laurent term = monomial(rlead - dlead, rc / dc);
    quo += term;
    rem -= term * d;
  }
  return quo;
}

std::string to_string(const Laurent& l) {
  if (l.is_zero()) return "0";
  std::string out;
  for (auto it = l.terms().rbegin(); it != l.terms().rend(); ++it) {
    const auto& [d, c] = *it;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational a = abs(c);
    std::string mono;
    auto part = [&](const char* v, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e != 1) mono += "^" + std::to_string(e);
    };
    part("a", d.a);
    part("q", d.q);
    part("t", d.t);
    if (mono.empty()) out += a.get_str();
    else out += (a == 1 ? "" : a.get_str() + "*") + mono;
  }
  return out;
}

Laurent quantum_int(int j) {
  if (j < 0) return -quantum_int(-j);
  Laurent r;
  for (int e = j - 1; e >= 1 - j; e -= 2) r.add({0, e, 0}, 1);
  return r;
}

Laurent quantum_factorial(int n) {
  if (n < 0) throw std::invalid_argument("negative factorial");
  Laurent r(1);
  for (int j = 2; j <= n; ++j) r = r * quantum_int(j);
  return r;
}

Laurent quantum_binomial(int j, int k) {
  if (k < 0 || k > j) throw std::out_of_range("binomial index out of range");
  return quantum_factorial(j).divide_exact(quantum_factorial(k) * quantum_factorial(j - k));
}

Laurent f_factor(int n, const Composition& lambda) {
  if (lambda.total() != n) throw std::invalid_argument("composition does not sum to n");
  Laurent den(1);
  for (int p : lambda.parts) den = den * quantum_factorial(p);
  return quantum_factorial(n).divide_exact(den);
}

bool Window::contains(const MultiDegree& d) const {
  return d.a >= amin && d.a <= amax && d.q >= qmin && d.q <= qmax && d.t >= tmin && d.t <= tmax;
}

Window Window::intersect(const Window& o) const {
  return {std::max(amin, o.amin), std::min(amax, o.amax), std::max(qmin, o.qmin),
          std::min(qmax, o.qmax), std::max(tmin, o.tmin), std::min(tmax, o.tmax)};
}

std::string to_string(const Window& w) {
  return "a[" + std::to_string(w.amin) + "," + std::to_string(w.amax) + "] q[" +
         std::to_string(w.qmin) + "," + std::to_string(w.qmax) + "] t[" + std::to_string(w.tmin) +
         "," + std::to_string(w.tmax) + "]";
}

TriSeries TriSeries::from_laurent(const Laurent& l, const Window& w) {
  TriSeries s(w);
  for (const auto& [d, c] : l.terms()) s.add(d, c);
  return s;
}

Rational TriSeries::coeff(const MultiDegree& d) const {
  auto it = c_.find(d);
  return it == c_.end() ? Rational(0) : it->second;
}

void TriSeries::add(const MultiDegree& d, const Rational& c) {
  if (c == 0 || !w_.contains(d)) return;
  auto [it, ins] = c_.try_emplace(d, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

void TriSeries::require_same_window(const TriSeries& o) const {
  if (!(w_ == o.w_)) throw std::invalid_argument("series windows differ");
}

TriSeries TriSeries::operator+(const TriSeries& o) const {
  require_same_window(o);
  TriSeries r = *this;
  for (const auto& [d, c] : o.c_) r.add(d, c);
  return r;
}

TriSeries TriSeries::operator-(const TriSeries& o) const {
  require_same_window(o);
  TriSeries r = *this;
  for (const auto& [d, c] : o.c_) r.add(d, -c);
  return r;
}

TriSeries TriSeries::operator*(const TriSeries& o) const {
  require_same_window(o);
  TriSeries r(w_);
  for (const auto& [dx, cx] : c_)
    for (const auto& [dy, cy] : o.c_) r.add(dx + dy, cx * cy);
  return r;
}

TriSeries TriSeries::times(const Laurent& l) const {
  TriSeries r(w_);
  for (const auto& [dx, cx] : c_)
    for (const auto& [dy, cy] : l.terms()) r.add(dx + dy, cx * cy);
  return r;
}

TriSeries TriSeries::shifted(const MultiDegree& d) const {
  TriSeries r(w_);
  for (const auto& [x, c] : c_) r.add(x + d, c);
  return r;
}

TriSeries TriSeries::restricted(const Window& w) const {
  TriSeries r(w);
  for (const auto& [x, c] : c_) r.add(x, c);
  return r;
}

std::vector<Mismatch> TriSeries::compare(const TriSeries& expected) const {
  Window w = w_.intersect(expected.w_);
  std::vector<Mismatch> out;
  std::map<MultiDegree, std::pair<Rational, Rational>> all;
  for (const auto& [d, c] : c_)
    if (w.contains(d)) all[d].first = c;
  for (const auto& [d, c] : expected.c_)
    if (w.contains(d)) all[d].second = c;
  for (const auto& [d, gc] : all)
    if (gc.first != gc.second) out.push_back({d, gc.first, gc.second});
  return out;
}

std::string to_string(const TriSeries& s) {
  Laurent l;
  for (const auto& [d, c] : s.coeffs()) l.add(d, c);
  return to_string(l) + " on " + to_string(s.window());
}

RationalSeriesExpr RationalSeriesExpr::operator*(const RationalSeriesExpr& o) const {
  RationalSeriesExpr r = *this;
  r.num.insert(r.num.end(), o.num.begin(), o.num.end());
  r.den.insert(r.den.end(), o.den.begin(), o.den.end());
  return r;
}

namespace {

using Keep = std::function<bool(const MultiDegree&)>;

Laurent mul_keep(const Laurent& x, const Laurent& y, const Keep& keep) {
  Laurent r;
  for (const auto& [dx, cx] : x.terms())
    for (const auto& [dy, cy] : y.terms()) {
      MultiDegree d = dx + dy;
      if (keep(d)) r.add(d, cx * cy);
    }
  return r;
}

struct Inverse {
  Laurent ratio;  // r with D = c0 (1 - r)
  MultiDegree c0deg;
  Rational c0;
  Direction dir;
};

Inverse prepare(const DenFactor& f) {
  if (f.poly.is_zero()) throw std::domain_error("zero denominator factor");
  const auto& terms = f.poly.terms();
  const std::pair<const MultiDegree, Rational>* pick = nullptr;
  for (const auto& kv : terms) {
    if (!pick) {
      pick = &kv;
      continue;
    }
    bool better = false;
    switch (f.dir) {
      case Direction::Q: better = kv.first.q < pick->first.q; break;
      case Direction::QInv: better = kv.first.q > pick->first.q; break;
      case Direction::T: better = kv.first.t < pick->first.t; break;
    }
    if (better) pick = &kv;
  }
  Inverse inv{Laurent(), pick->first, pick->second, f.dir};
  for (const auto& [d, c] : terms) {
    if (d == pick->first) continue;
    MultiDegree rel = d - pick->first;
    bool ok = false;
    switch (f.dir) {
      case Direction::Q: ok = rel.q > 0 && rel.a == 0 && rel.t == 0; break;
      case Direction::QInv: ok = rel.q < 0 && rel.a == 0 && rel.t == 0; break;
      case Direction::T: ok = rel.t > 0; break;
    }
    if (!ok) throw std::domain_error("denominator factor not invertible in its direction");
    inv.ratio.add(rel, -c / pick->second);
  }
  return inv;
}

/// 1/D truncated to terms accepted by `keep_ratio_power` on the ratio part.
Laurent inverse_series(const Inverse& inv, const Keep& keep_ratio_power, int max_terms) {
  Laurent sum(1), power(1);
  for (int n = 1; n <= max_terms; ++n) {
    power = mul_keep(power, inv.ratio, keep_ratio_power);
    if (power.is_zero()) break;
    sum += power;
    if (n == max_terms) throw std::runtime_error("series expansion did not terminate");
  }
  return Laurent::monomial(-inv.c0deg, 1 / inv.c0) * sum;
}

}  // namespace

TriSeries expand_rational(const RationalSeriesExpr& e, const Window& w) {
  if (w.empty()) throw std::invalid_argument("empty window");
  std::vector<Inverse> tinv, qinv;
  bool has_q = false, has_qinv = false;
  for (const auto& f : e.den) {
    Inverse inv = prepare(f);
    if (f.dir == Direction::T) tinv.push_back(inv);
    else {
      (f.dir == Direction::Q ? has_q : has_qinv) = true;
      qinv.push_back(inv);
    }
  }
  if (has_q && has_qinv) throw std::invalid_argument("mixed q expansion directions");

  auto min_t = [](const Laurent& l) {
    int m = std::numeric_limits<int>::max();
    for (const auto& [d, c] : l.terms()) m = std::min(m, d.t);
    return m;
  };

  Laurent P(1);
  long t_lower = 0;
  for (const auto& n : e.num) {
    if (n.is_zero()) return TriSeries(w);
    t_lower += min_t(n);
  }
  for (const auto& inv : tinv) t_lower -= inv.c0deg.t;
  for (const auto& inv : qinv) t_lower -= inv.c0deg.t;
  int t_budget = static_cast<int>(w.tmax - t_lower);
  if (t_budget < 0) return TriSeries(w);

  for (const auto& n : e.num) P = P * n;
  for (const auto& inv : tinv) {
    Laurent s = inverse_series(inv, [&](const MultiDegree& d) { return d.t <= t_budget; }, t_budget + 2);
    P = P * s;
  }
  long p_tmin = 0;
  for (const auto& inv : qinv) p_tmin += -inv.c0deg.t;
  {
    Laurent cut;
    for (const auto& [d, c] : P.terms())
      if (d.t + p_tmin <= w.tmax) cut.add(d, c);
    P = cut;
  }
  if (P.is_zero()) return TriSeries(w);

  if (!qinv.empty()) {
    int pmin = std::numeric_limits<int>::max(), pmax = std::numeric_limits<int>::min();
    for (const auto& [d, c] : P.terms()) {
      pmin = std::min(pmin, d.q);
      pmax = std::max(pmax, d.q);
    }
    if (has_q) {
      long lower = pmin;
      for (const auto& inv : qinv) lower -= inv.c0deg.q;
      int budget = static_cast<int>(w.qmax - lower);
      if (budget < 0) return TriSeries(w);
      for (const auto& inv : qinv) {
        Laurent s = inverse_series(inv, [&](const MultiDegree& d) { return d.q <= budget; }, budget + 2);
        P = P * s;
      }
    } else {
      long upper = pmax;
      for (const auto& inv : qinv) upper -= inv.c0deg.q;
      int budget = static_cast<int>(upper - w.qmin);
      if (budget < 0) return TriSeries(w);
      for (const auto& inv : qinv) {
        Laurent s = inverse_series(inv, [&](const MultiDegree& d) { return -d.q <= budget; }, budget + 2);
        P = P * s;
      }
    }
  }
  return TriSeries::from_laurent(P, w);
}

Variant parse_variant(const std::string& s) {
  if (s == "intrinsic") return Variant::Intrinsic;
  if (s == "finite") return Variant::Finite;
  if (s == "infinite") return Variant::Infinite;
  if (s == "def_intrinsic") return Variant::DefIntrinsic;
  if (s == "def_finite") return Variant::DefFinite;
  if (s == "def_infinite") return Variant::DefInfinite;
  throw std::invalid_argument("unknown variant: " + s);
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Intrinsic: return "intrinsic";
    case Variant::Finite: return "finite";
    case Variant::Infinite: return "infinite";
    case Variant::DefIntrinsic: return "def_intrinsic";
    case Variant::DefFinite: return "def_finite";
    case Variant::DefInfinite: return "def_infinite";
  }
  return "?";
}

namespace {

Laurent one_plus(const MultiDegree& d) { return Laurent(1) + Laurent::monomial(d); }
Laurent one_minus(const MultiDegree& d) { return Laurent(1) - Laurent::monomial(d); }

RationalSeriesExpr intrinsic_expr(int k) {
  RationalSeriesExpr e;
  for (int j = 1; j <= k; ++j) {
    e.num.push_back(one_plus({1, -2 * j, 0}));
    e.den.push_back({one_minus({0, 2 * j, 0}), Direction::Q});
  }
  return e;
}

RationalSeriesExpr def_intrinsic_expr(int k) {
  RationalSeriesExpr e = intrinsic_expr(k);
  for (int j = 1; j <= k; ++j) e.den.push_back({one_minus({0, -2 * j, 2}), Direction::T});
  return e;
}

}  // namespace

RationalSeriesExpr unknot_table(Variant v, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  RationalSeriesExpr fact = RationalSeriesExpr::constant(quantum_factorial(k));
  switch (v) {
    case Variant::Intrinsic: return intrinsic_expr(k);
    case Variant::Finite: {
      RationalSeriesExpr e = fact * intrinsic_expr(k);
      for (int j = 1; j <= k; ++j) e.num.push_back(one_plus({0, -2 * j, 1}));
      return e;
    }
    case Variant::Infinite: {
      RationalSeriesExpr e;
      for (int i = 0; i < k; ++i) {
        e.num.push_back(one_minus({0, -2, 2}));
        e.den.push_back({one_minus({0, 2, 0}), Direction::Q});
      }
      for (int j = 1; j <= k; ++j) {
        e.num.push_back(one_plus({1, -2 * j, 0}));
        e.den.push_back({one_minus({0, -2 * j, 2}), Direction::T});
      }
      return e;
    }
    case Variant::DefIntrinsic: return def_intrinsic_expr(k);
    case Variant::DefFinite: return fact * intrinsic_expr(k);
    case Variant::DefInfinite: return fact * def_intrinsic_expr(k);
  }
  throw std::invalid_argument("unknown variant");
}

bool Theorem1Report::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

Theorem1Report theorem1_check(const std::vector<int>& k_list, const Window& w) {
  Theorem1Report rep;
  for (int k : k_list) {
    RationalSeriesExpr fact = RationalSeriesExpr::constant(quantum_factorial(k));
    RationalSeriesExpr tfac;
    for (int j = 1; j <= k; ++j) tfac.num.push_back(one_plus({0, -2 * j, 1}));
    struct Rel {
      std::string name;
      RationalSeriesExpr lhs, rhs;
    };
    std::vector<Rel> rels = {
        {"finite = intrinsic * [k]! * prod(1+tq^-2j)", unknot_table(Variant::Finite, k),
         unknot_table(Variant::Intrinsic, k) * fact * tfac},
        {"def_finite = intrinsic * [k]!", unknot_table(Variant::DefFinite, k),
         unknot_table(Variant::Intrinsic, k) * fact},
        {"def_infinite = def_intrinsic * [k]!", unknot_table(Variant::DefInfinite, k),
         unknot_table(Variant::DefIntrinsic, k) * fact},
    };
    for (auto& r : rels) {
      auto mm = expand_rational(r.lhs, w).compare(expand_rational(r.rhs, w));
      rep.entries.push_back({k, r.name, mm.empty(), mm});
    }
  }
  return rep;
}

}  // namespace fraylab
