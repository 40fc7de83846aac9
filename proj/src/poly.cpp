#include "fraylab/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace fraylab {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

Symbol e_sym(int block, int k, int side) {
  return {SymKind::E, block, k, side, MultiDegree{0, 2 * k, 0}};
}
Symbol p_sym(int block, int k, int side) {
  return {SymKind::P, block, k, side, MultiDegree{0, 2 * k, 0}};
}
Symbol x_sym(int index, int side) { return {SymKind::X, index, 1, side, MultiDegree{0, 2, 0}}; }
Symbol u_sym(int i, int bundle) { return {SymKind::U, bundle, i, 0, MultiDegree{0, -2 * i, 2}}; }
Symbol y_sym(int block, int k) { return {SymKind::Y, block, k, 0, MultiDegree{0, -2 * k, 2}}; }
Symbol v_sym(int k, int bundle) { return {SymKind::V, bundle, k, 0, MultiDegree{0, -2 * k, 2}}; }
Symbol opaque_sym(int id, MultiDegree deg) { return {SymKind::Opaque, 0, id, 0, deg}; }
Symbol unzip_sym() { return opaque_sym(kUnzipId, MultiDegree{}); }
Symbol zip_sym() { return opaque_sym(kZipId, MultiDegree{}); }

std::string to_string(const Symbol& s) {
  auto side_mark = [&](const std::string& base) {
    if (s.side == 1) return base + "'";
    return base;
  };
  switch (s.kind) {
    case SymKind::E:
    case SymKind::P: {
      std::string alpha = s.side == 2 ? "M" : "X";
      std::string b = alpha + std::to_string(s.block);
      if (s.side == 1) b += "'";
      return std::string(s.kind == SymKind::E ? "e" : "p") + std::to_string(s.k) + "(" + b + ")";
    }
    case SymKind::X:
      return side_mark((s.side == 2 ? "m" : "x") + std::to_string(s.block));
    case SymKind::U:
      return s.block ? "u[" + std::to_string(s.block) + "]" + std::to_string(s.k)
                     : "u" + std::to_string(s.k);
    case SymKind::Y:
      return "y" + std::to_string(s.block) + "_" + std::to_string(s.k);
    case SymKind::V:
      return s.block ? "vd[" + std::to_string(s.block) + "]" + std::to_string(s.k)
                     : "vd" + std::to_string(s.k);
    case SymKind::Opaque:
      if (s.k == kUnzipId) return "unzip";
      if (s.k == kZipId) return "zip";
      return "op" + std::to_string(s.k);
  }
  return "?";
}

Monomial::Monomial(const Symbol& s, int power) {
  if (power < 0) throw std::invalid_argument("negative exponent");
  if (power > 0) f_.emplace_back(s, power);
}

Monomial Monomial::from_factors(std::vector<std::pair<Symbol, int>> f) {
  std::sort(f.begin(), f.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Monomial m;
  for (auto& [s, e] : f) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e == 0) continue;
    if (!m.f_.empty() && m.f_.back().first == s)
      m.f_.back().second += e;
    else
      m.f_.emplace_back(s, e);
  }
  return m;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [s, e] : f_) d += e;
  return d;
}

int Monomial::power_of(const Symbol& s) const {
  for (const auto& [x, e] : f_)
    if (x == s) return e;
  return 0;
}

MultiDegree Monomial::degree() const {
  MultiDegree d;
  for (const auto& [s, e] : f_) d += s.deg * e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto i = f_.begin();
  auto j = o.f_.begin();
  while (i != f_.end() || j != o.f_.end()) {
    if (j == o.f_.end() || (i != f_.end() && i->first < j->first)) {
      r.f_.push_back(*i++);
    } else if (i == f_.end() || j->first < i->first) {
      r.f_.push_back(*j++);
    } else {
      r.f_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::pair<Monomial, Monomial> Monomial::split() const {
  Monomial ring, par;
  for (const auto& f : f_) (f.first.is_ring() ? ring : par).f_.push_back(f);
  return {ring, par};
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [s, e] : m.factors()) {
    if (!out.empty()) out += "*";
    out += to_string(s);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

Poly::Poly(const Rational& c) {
  if (c != 0) t_.emplace(Monomial{}, c);
}

Poly Poly::sym(const Symbol& s, int power) { return mono(Monomial(s, power)); }

Poly Poly::mono(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.t_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

Rational Poly::constant_term() const { return coeff(Monomial{}); }

Rational Poly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rational(0) : it->second;
}

std::optional<MultiDegree> Poly::degree() const {
  if (t_.empty()) return std::nullopt;
  MultiDegree d = t_.begin()->first.degree();
  for (const auto& [m, c] : t_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

bool Poly::is_homogeneous() const { return t_.empty() || degree().has_value(); }

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, x] : t_) x *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, x] : r.t_) x = -x;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Poly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Poly Poly::substitute(const std::function<std::optional<Poly>(const Symbol&)>& f) const {
  std::map<std::pair<Symbol, int>, Poly> powers;
  std::map<Symbol, std::optional<Poly>> images;
  Poly r;
  for (const auto& [m, c] : t_) {
    Poly term(c);
    std::vector<std::pair<Symbol, int>> kept;
    for (const auto& [s, e] : m.factors()) {
      auto it = images.find(s);
      if (it == images.end()) it = images.emplace(s, f(s)).first;
      if (!it->second) {
        kept.emplace_back(s, e);
        continue;
      }
      auto key = std::make_pair(s, e);
      auto pw = powers.find(key);
      if (pw == powers.end()) pw = powers.emplace(key, it->second->pow(e)).first;
      term *= pw->second;
      if (term.is_zero()) break;
    }
    if (term.is_zero()) continue;
    if (!kept.empty()) term *= Poly::mono(Monomial::from_factors(std::move(kept)));
    r += term;
  }
  return r;
}

Poly Poly::substitute(const std::map<Symbol, Poly>& m) const {
  return substitute([&](const Symbol& s) -> std::optional<Poly> {
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
  });
}

Rational Poly::evaluate(const std::function<Rational(const Symbol&)>& f) const {
  std::map<Symbol, Rational> cache;
  Rational total = 0;
  for (const auto& [m, c] : t_) {
    Rational v = c;
    for (const auto& [s, e] : m.factors()) {
      auto it = cache.find(s);
      if (it == cache.end()) it = cache.emplace(s, f(s)).first;
      Rational p;
      mpz_class den(it->second.get_den()), num(it->second.get_num());
      mpz_pow_ui(num.get_mpz_t(), num.get_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), e);
      p = Rational(num, den);
      v *= p;
    }
    total += v;
  }
  return total;
}

std::map<Monomial, Poly> Poly::by_parameter() const {
  std::map<Monomial, Poly> out;
  for (const auto& [m, c] : t_) {
    auto [ring, par] = m.split();
    out[par].add_term(ring, c);
  }
  return out;
}

Poly Poly::from_parameter_parts(const std::map<Monomial, Poly>& parts) {
  Poly r;
  for (const auto& [par, p] : parts)
    for (const auto& [m, c] : p.terms()) r.add_term(m * par, c);
  return r;
}

Poly Poly::filter(const std::function<bool(const Monomial&)>& keep) const {
  Poly r;
  for (const auto& [m, c] : t_)
    if (keep(m)) r.t_.emplace(m, c);
  return r;
}

bool Poly::any_symbol(const std::function<bool(const Symbol&)>& pred) const {
  for (const auto& [m, c] : t_)
    for (const auto& [s, e] : m.factors())
      if (pred(s)) return true;
  return false;
}

int Poly::parameter_degree() const {
  int best = 0;
  for (const auto& [m, c] : t_) {
    int d = 0;
    for (const auto& [s, e] : m.factors())
      if (s.is_parameter()) d += e;
    best = std::max(best, d);
  }
  return best;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    std::string cs = c.get_str();
    bool neg = c < 0;
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    Rational a = abs(c);
    if (m.is_one()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += to_string(m);
    }
  }
  return out;
}

}  // namespace fraylab
