#include "fraylab/complex.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace fraylab {

namespace {

const MultiDegree kT{0, 0, 1};

int popcount_below(unsigned s, int i) { return std::popcount(s & ((1u << i) - 1u)); }

std::string entry_name(int r, int c) { return "(" + std::to_string(r) + "<-" + std::to_string(c) + ")"; }

void add_entry(Matrix& m, int r, int c, const Poly& p) {
  if (p.is_zero()) return;
  auto [it, ins] = m.try_emplace({r, c}, p);
  if (!ins) {
    it->second += p;
    if (it->second.is_zero()) m.erase(it);
  }
}

std::vector<Symbol> merge_params(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  std::vector<Symbol> out = a;
  for (const auto& s : b)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

}  // namespace

Poly truncate_cap(const Poly& p, int cap) {
  if (cap < 0) return p;
  return p.filter([&](const Monomial& m) {
    int d = 0;
    for (const auto& [s, e] : m.factors())
      if (s.is_parameter()) d += e;
    return d <= cap;
  });
}

void check_homogeneous(const ComplexData& d) {
  int n = static_cast<int>(d.objects.size());
  for (const auto& [key, p] : d.conn) {
    auto [r, s] = key;
    if (r < 0 || s < 0 || r >= n || s >= n) throw std::out_of_range("connection entry outside objects");
    MultiDegree want = kT - d.objects[static_cast<std::size_t>(r)].degree() +
                       d.objects[static_cast<std::size_t>(s)].degree();
    for (const auto& [m, c] : p.terms())
      if (m.degree() != want)
        throw std::invalid_argument("connection entry " + entry_name(r, s) + " term " + to_string(m) +
                                    " has degree " + to_string(m.degree()) + ", expected " +
                                    to_string(want));
  }
  for (const auto& [m, c] : d.curvature.terms())
    if (m.degree() != MultiDegree{0, 0, 2})
      throw std::invalid_argument("curvature term " + to_string(m) + " is not of degree t^2");
}

McResult mc_check(const ComplexData& d) {
  std::map<int, std::vector<std::pair<int, const Poly*>>> out;
  for (const auto& [key, p] : d.conn) out[key.second].emplace_back(key.first, &p);
  Matrix sq;
  for (const auto& [s, firsts] : out)
    for (const auto& [m, p1] : firsts) {
      auto it = out.find(m);
      if (it == out.end()) continue;
      for (const auto& [r, p2] : it->second) add_entry(sq, r, s, truncate_cap(*p2 * *p1, d.cap));
    }
  Poly curv = truncate_cap(d.curvature, d.cap);
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, p] : sq) keys.insert(k);
  if (!curv.is_zero())
    for (int i = 0; i < static_cast<int>(d.objects.size()); ++i) keys.insert({i, i});
  for (const auto& key : keys) {
    auto [r, s] = key;
    Poly diff;
    auto it = sq.find(key);
    if (it != sq.end()) diff = it->second;
    if (r == s) diff -= curv;
    const RingSpec& ring = *d.objects[static_cast<std::size_t>(r)].ring;
    if (ring.is_zero(diff)) continue;
    McResult res;
    res.pass = false;
    res.row = r;
    res.col = s;
    for (const auto& [par, part] : diff.by_parameter()) {
      if (ring.is_zero(part)) continue;
      res.parameter = par;
      res.message = "Maurer-Cartan failure at " + entry_name(r, s) + ", parameter " + to_string(par) +
                    ": delta^2 - F = " + to_string(part);
      return res;
    }
    res.message = "Maurer-Cartan failure at " + entry_name(r, s);
    return res;
  }
  return {};
}

CurvedComplex::CurvedComplex(ComplexData d) : d_(std::move(d)) {
  for (const auto& o : d_.objects)
    if (!o.ring) throw std::invalid_argument("object without ring");
  for (auto it = d_.conn.begin(); it != d_.conn.end();) {
    it->second = truncate_cap(it->second, d_.cap);
    if (it->second.is_zero()) it = d_.conn.erase(it);
    else ++it;
  }
  d_.curvature = truncate_cap(d_.curvature, d_.cap);
  check_homogeneous(d_);
  McResult r = mc_check(d_);
  if (!r.pass) throw McError(r);
}

Poly CurvedComplex::entry(int row, int col) const {
  auto it = d_.conn.find({row, col});
  return it == d_.conn.end() ? Poly() : it->second;
}

std::map<Monomial, Matrix> CurvedComplex::by_parameter() const {
  std::map<Monomial, Matrix> out;
  for (const auto& [key, p] : d_.conn)
    for (const auto& [par, part] : p.by_parameter()) out[par][key] = part;
  return out;
}

std::vector<std::pair<Poly, Monomial>> CurvedComplex::curvature_terms() const {
  std::vector<std::pair<Poly, Monomial>> out;
  for (const auto& [par, part] : d_.curvature.by_parameter()) out.emplace_back(part, par);
  return out;
}

Matrix identity_matrix(int n) {
  Matrix m;
  for (int i = 0; i < n; ++i) m[{i, i}] = Poly(1);
  return m;
}

Matrix compose(const Matrix& a, const Matrix& b, int cap) {
  std::map<int, std::vector<std::pair<int, const Poly*>>> a_by_col;
  for (const auto& [key, p] : a) a_by_col[key.second].emplace_back(key.first, &p);
  Matrix out;
  for (const auto& [key, pb] : b) {
    auto it = a_by_col.find(key.first);
    if (it == a_by_col.end()) continue;
    for (const auto& [r, pa] : it->second) add_entry(out, r, key.second, truncate_cap(*pa * pb, cap));
  }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b, const Rational& s) {
  Matrix out = a;
  for (const auto& [key, p] : b) add_entry(out, key.first, key.second, p * s);
  return out;
}

Matrix scale(const Matrix& a, const Rational& s) {
  Matrix out;
  if (s == 0) return out;
  for (const auto& [key, p] : a) out[key] = p * s;
  return out;
}

bool matrix_equal(const Matrix& a, const Matrix& b, const std::vector<ComplexObject>& targets, int cap) {
  Matrix diff = add(a, b, -1);
  for (const auto& [key, p] : diff) {
    Poly t = truncate_cap(p, cap);
    if (!targets.at(static_cast<std::size_t>(key.first)).ring->is_zero(t)) return false;
  }
  return true;
}

Matrix commutator_with_connection(const CurvedComplex& tgt, const Matrix& f, const MultiDegree& deg_f,
                                  const CurvedComplex& src) {
  int cap = std::max(tgt.cap(), src.cap());
  if (tgt.cap() < 0 || src.cap() < 0) cap = -1;
  int sign = commutator_sign(kT, deg_f);
  return add(compose(tgt.connection(), f, cap), compose(f, src.connection(), cap), Rational(-sign));
}

ComplexData shift_data(const ComplexData& c, const ShiftSpec& s) {
  ComplexData d = c;
  for (auto& o : d.objects) o.shift += s.delta;
  if (shift_sign(s) < 0)
    for (auto& [key, p] : d.conn) p = -p;
  return d;
}

CurvedComplex shift_complex(const CurvedComplex& c, const ShiftSpec& s) {
  return CurvedComplex(shift_data(c.data(), s));
}

CurvedComplex direct_sum(const CurvedComplex& x, const CurvedComplex& y) {
  if (!(x.curvature() == y.curvature())) throw std::invalid_argument("direct sum needs equal curvature");
  if (x.cap() != y.cap()) throw std::invalid_argument("direct sum needs equal caps");
  ComplexData d = x.data();
  int off = x.size();
  for (const auto& o : y.objects()) d.objects.push_back(o);
  for (const auto& [key, p] : y.connection()) d.conn[{key.first + off, key.second + off}] = p;
  d.params = merge_params(x.params(), y.params());
  return CurvedComplex(std::move(d));
}

CurvedComplex twist(const CurvedComplex& c, const Matrix& alpha, const Poly& extra_curvature) {
  ComplexData d = c.data();
  d.conn = add(d.conn, alpha);
  d.curvature += extra_curvature;
  return CurvedComplex(std::move(d));
}

CurvedComplex cone(const Matrix& f, const CurvedComplex& x, const CurvedComplex& y) {
  if (!(x.curvature() == y.curvature())) throw std::invalid_argument("cone needs equal curvature");
  Matrix closed = commutator_with_connection(y, f, MultiDegree{}, x);
  if (!matrix_equal(closed, Matrix{}, y.objects(), y.cap()))
    throw std::invalid_argument("cone of a map that is not closed");
  ComplexData xs = shift_data(x.data(), ShiftSpec{{0, 0, -1}});
  ComplexData d;
  int off = x.size();
  d.objects = xs.objects;
  for (const auto& o : y.objects()) d.objects.push_back(o);
  d.conn = xs.conn;
  for (const auto& [key, p] : y.connection()) d.conn[{key.first + off, key.second + off}] = p;
  for (const auto& [key, p] : f) add_entry(d.conn, key.first + off, key.second, p);
  d.curvature = x.curvature();
  d.params = merge_params(x.params(), y.params());
  d.cap = y.cap();
  return CurvedComplex(std::move(d));
}

SdrCheck verify_sdr(const CurvedComplex& big, const CurvedComplex& small, const SdrData& s) {
  int cap = big.cap();
  auto fail = [](const std::string& m) { return SdrCheck{false, m}; };
  if (!matrix_equal(compose(s.f, s.g, cap), identity_matrix(small.size()), small.objects(), cap))
    return fail("f g != 1");
  Matrix dh = add(compose(big.connection(), s.h, cap), compose(s.h, big.connection(), cap));
  Matrix want = add(identity_matrix(big.size()), compose(s.g, s.f, cap), -1);
  if (!matrix_equal(dh, want, big.objects(), cap)) return fail("[d,h] != 1 - g f");
  if (!matrix_equal(compose(s.h, s.h, cap), {}, big.objects(), cap)) return fail("h^2 != 0");
  if (!matrix_equal(compose(s.f, s.h, cap), {}, small.objects(), cap)) return fail("f h != 0");
  if (!matrix_equal(compose(s.h, s.g, cap), {}, big.objects(), cap)) return fail("h g != 0");
  if (!matrix_equal(commutator_with_connection(small, s.f, {}, big), {}, small.objects(), cap))
    return fail("f not closed");
  if (!matrix_equal(commutator_with_connection(big, s.g, {}, small), {}, big.objects(), cap))
    return fail("g not closed");
  return {};
}

Elimination gaussian_eliminate(const CurvedComplex& c, int row, int col) {
  if (row == col) throw std::invalid_argument("cannot eliminate a diagonal entry");
  if (row < 0 || col < 0 || row >= c.size() || col >= c.size()) throw std::out_of_range("entry index");
  Poly phi = c.entry(row, col);
  if (phi.is_zero() || !phi.is_constant())
    throw std::invalid_argument("entry " + entry_name(row, col) + " is not invertible");
  if (c.objects()[static_cast<std::size_t>(row)].ring->id() !=
      c.objects()[static_cast<std::size_t>(col)].ring->id())
    throw std::invalid_argument("invertible entry between different rings");
  Rational inv = 1 / phi.constant_term();
  int cap = c.cap();

  Elimination out;
  std::vector<int> newidx(static_cast<std::size_t>(c.size()), -1);
  for (int i = 0; i < c.size(); ++i)
    if (i != row && i != col) {
      newidx[static_cast<std::size_t>(i)] = static_cast<int>(out.kept.size());
      out.kept.push_back(i);
    }
  std::map<int, Poly> into_col;  // D(r, col)
  std::map<int, Poly> from_row;  // D(row, s)
  for (const auto& [key, p] : c.connection()) {
    if (key.second == col && key.first != row && key.first != col) into_col[key.first] = p;
    if (key.first == row && key.second != row && key.second != col) from_row[key.second] = p;
  }
  ComplexData d;
  for (int i : out.kept) d.objects.push_back(c.objects()[static_cast<std::size_t>(i)]);
  for (const auto& [key, p] : c.connection()) {
    int r = newidx[static_cast<std::size_t>(key.first)], s = newidx[static_cast<std::size_t>(key.second)];
    if (r >= 0 && s >= 0) add_entry(d.conn, r, s, p);
  }
  for (const auto& [r, pr] : into_col)
    for (const auto& [s, ps] : from_row)
      add_entry(d.conn, newidx[static_cast<std::size_t>(r)], newidx[static_cast<std::size_t>(s)],
                truncate_cap(pr * ps * (-inv), cap));
  d.curvature = c.curvature();
  d.params = c.params();
  d.cap = cap;
  out.reduced = CurvedComplex(std::move(d));

  for (int i : out.kept) {
    out.sdr.f[{newidx[static_cast<std::size_t>(i)], i}] = Poly(1);
    out.sdr.g[{i, newidx[static_cast<std::size_t>(i)]}] = Poly(1);
  }
  for (const auto& [r, pr] : into_col) add_entry(out.sdr.f, newidx[static_cast<std::size_t>(r)], row, pr * (-inv));
  for (const auto& [s, ps] : from_row) add_entry(out.sdr.g, col, newidx[static_cast<std::size_t>(s)], ps * (-inv));
  out.sdr.h[{col, row}] = Poly(inv);

  SdrCheck chk = verify_sdr(c, out.reduced, out.sdr);
  if (!chk.pass) throw std::logic_error("Gaussian elimination produced a bad SDR: " + chk.failure);
  return out;
}

ComplexData exterior_twist(const ComplexData& base, const std::vector<OddTwist>& twists) {
  int n = static_cast<int>(twists.size());
  if (n > 20) throw std::invalid_argument("too many odd parameters");
  int nb = static_cast<int>(base.objects.size());
  unsigned subsets = 1u << n;
  ComplexData d;
  d.curvature = base.curvature;
  d.params = base.params;
  d.cap = base.cap;
  for (unsigned S = 0; S < subsets; ++S)
    for (int b = 0; b < nb; ++b) {
      ComplexObject o = base.objects[static_cast<std::size_t>(b)];
      std::string tag;
      for (int i = 0; i < n; ++i)
        if (S & (1u << i)) {
          o.shift += twists[static_cast<std::size_t>(i)].theta_degree;
          tag += (tag.empty() ? "" : ",") + std::to_string(i + 1);
        }
      if (!tag.empty()) o.label = "th{" + tag + "}" + (o.label.empty() ? "" : "." + o.label);
      d.objects.push_back(std::move(o));
    }
  auto idx = [&](unsigned S, int b) { return static_cast<int>(S) * nb + b; };
  for (unsigned S = 0; S < subsets; ++S) {
    bool odd = std::popcount(S) % 2 == 1;
    for (const auto& [key, p] : base.conn) add_entry(d.conn, idx(S, key.first), idx(S, key.second), odd ? -p : p);
    for (int i = 0; i < n; ++i) {
      unsigned bit = 1u << i;
      bool neg = popcount_below(S, i) % 2 == 1;
      const auto& tw = twists[static_cast<std::size_t>(i)];
      if (!(S & bit))
        for (const auto& [key, p] : tw.forward) add_entry(d.conn, idx(S | bit, key.first), idx(S, key.second), neg ? -p : p);
      else
        for (const auto& [key, p] : tw.backward) add_entry(d.conn, idx(S ^ bit, key.first), idx(S, key.second), neg ? -p : p);
    }
  }
  return d;
}

CurvedComplex koszul_build(const RingPtr& ring, const std::vector<Poly>& elements, int qshift) {
  ComplexData base;
  base.objects.push_back({MultiDegree{}, qshift, ring, ring->id()});
  std::vector<OddTwist> tw;
  for (const auto& e : elements) {
    auto deg = e.degree();
    if (!e.is_zero() && !deg) throw std::invalid_argument("Koszul element is not homogeneous");
    MultiDegree de = deg ? *deg : MultiDegree{};
    OddTwist t;
    t.theta_degree = kT - de;
    t.forward[{0, 0}] = e;
    tw.push_back(std::move(t));
  }
  return CurvedComplex(exterior_twist(base, tw));
}

DeformationError::DeformationError(const DeformationFailure& f)
    : std::runtime_error("deformation condition " + f.condition + " fails at index " + std::to_string(f.index) +
                         (f.other >= 0 ? "," + std::to_string(f.other) : "")),
      failure(f) {}

ComplexData strict_deformation_data(const CurvedComplex& c, const std::vector<Matrix>& xi,
                                    const std::vector<Poly>& phi, const std::vector<Symbol>& params, int cap) {
  if (xi.size() != params.size() || phi.size() != params.size())
    throw std::invalid_argument("deformation lists differ in length");
  ComplexData d = c.data();
  d.cap = cap;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i].is_parameter()) throw std::invalid_argument("deformation parameter must be even");
    Poly u = Poly::sym(params[i]);
    for (const auto& [key, p] : xi[i]) add_entry(d.conn, key.first, key.second, p * u);
    d.curvature += phi[i] * u;
  }
  d.params = merge_params(d.params, params);
  return d;
}

CurvedComplex strict_deformation(const CurvedComplex& c, const std::vector<Matrix>& xi,
                                 const std::vector<Poly>& phi, const std::vector<Symbol>& params, int cap) {
  ComplexData raw = strict_deformation_data(c, xi, phi, params, cap);
  std::vector<MultiDegree> deg;
  for (const auto& u : params) deg.push_back(kT - u.deg);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    Matrix lhs = commutator_with_connection(c, xi[i], deg[i], c);
    Matrix rhs;
    for (int o = 0; o < c.size(); ++o)
      if (!phi[i].is_zero()) rhs[{o, o}] = phi[i];
    if (!matrix_equal(lhs, rhs, c.objects(), cap))
      throw DeformationError({static_cast<int>(i), -1, "[d,xi]=phi"});
  }
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = i; j < xi.size(); ++j) {
      int sign = commutator_sign(deg[i], deg[j]);
      Matrix br = add(compose(xi[i], xi[j], cap), compose(xi[j], xi[i], cap), Rational(-sign));
      if (i == j) br = compose(xi[i], xi[i], cap);
      if (i == j && sign > 0) continue;
      if (!matrix_equal(br, {}, c.objects(), cap))
        throw DeformationError({static_cast<int>(i), static_cast<int>(j), "graded commutation"});
    }
  return CurvedComplex(std::move(raw));
}

namespace {

Matrix times_poly(const Matrix& m, const Poly& p, int cap) {
  Matrix out;
  for (const auto& [key, q] : m) add_entry(out, key.first, key.second, truncate_cap(q * p, cap));
  return out;
}

Matrix exp_series(const Matrix& h, const Poly& u, int n, int nil, int cap) {
  Matrix hk = identity_matrix(n), sum = identity_matrix(n);
  Rational fact = 1;
  Poly uk(1);
  for (int k = 1; k < nil; ++k) {
    hk = compose(h, hk, cap);
    fact *= k;
    uk *= u;
    sum = add(sum, times_poly(hk, uk, cap), 1 / fact);
  }
  return sum;
}

}  // namespace

Transport transport_twist(const CurvedComplex& c, const Matrix& h, const Symbol& u, int nilpotency) {
  if (nilpotency < 1) throw std::invalid_argument("nilpotency bound must be positive");
  int cap = c.cap();
  Matrix hk = identity_matrix(c.size());
  for (int k = 0; k < nilpotency; ++k) hk = compose(h, hk, cap);
  if (!matrix_equal(hk, {}, c.objects(), cap)) throw std::invalid_argument("h is not nilpotent within the bound");
  Poly up = Poly::sym(u);
  Transport t{exp_series(h, up, c.size(), nilpotency, cap), exp_series(scale(h, -1), up, c.size(), nilpotency, cap)};
  Matrix id = identity_matrix(c.size());
  if (!matrix_equal(compose(t.psi, t.psi_inv, cap), id, c.objects(), cap) ||
      !matrix_equal(compose(t.psi_inv, t.psi, cap), id, c.objects(), cap))
    throw std::logic_error("transport maps are not mutually inverse");
  return t;
}

CurvedComplex conjugate(const CurvedComplex& c, const Transport& t, const Poly& curvature) {
  ComplexData d = c.data();
  d.conn = compose(t.psi, compose(c.connection(), t.psi_inv, c.cap()), c.cap());
  d.curvature = curvature;
  return CurvedComplex(std::move(d));
}

TwistedIso hpt_conjugate(const CurvedComplex& x, const CurvedComplex& y, const Matrix& f, const Matrix& g,
                         const Matrix& alpha, const Poly& extra_curvature) {
  int cap = y.cap();
  if (!matrix_equal(compose(f, g, cap), identity_matrix(y.size()), y.objects(), cap) ||
      !matrix_equal(compose(g, f, cap), identity_matrix(x.size()), x.objects(), cap))
    throw std::invalid_argument("f and g are not mutually inverse");
  CurvedComplex xs = twist(x, alpha, extra_curvature);
  Matrix beta = compose(f, compose(alpha, g, cap), cap);
  CurvedComplex ys = twist(y, beta, extra_curvature);
  if (!matrix_equal(commutator_with_connection(ys, f, {}, xs), {}, ys.objects(), cap) ||
      !matrix_equal(commutator_with_connection(xs, g, {}, ys), {}, xs.objects(), cap))
    throw std::logic_error("twisted isomorphism is not closed");
  return {xs, ys};
}

CurvedComplex substitute_parameters(const CurvedComplex& c, const std::map<Symbol, Poly>& sub,
                                    const std::vector<Symbol>& new_params) {
  ComplexData d = c.data();
  for (auto& [key, p] : d.conn) p = truncate_cap(p.substitute(sub), d.cap);
  d.curvature = truncate_cap(d.curvature.substitute(sub), d.cap);
  d.params = new_params;
  return CurvedComplex(std::move(d));
}

SdrLift sdr_lift(const CurvedComplex& big, const CurvedComplex& small, const SdrData& sdr,
                 const std::vector<Matrix>& xi, const std::vector<Poly>& phi, const std::vector<Symbol>& params) {
  SdrCheck base = verify_sdr(big, small, sdr);
  if (!base.pass) throw std::invalid_argument("input is not an SDR: " + base.failure);
  int cap = big.cap();
  SdrLift out;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    Matrix lifted = compose(sdr.g, compose(xi[i], sdr.f, cap), cap);
    lifted = add(lifted, times_poly(sdr.h, phi[i], cap));
    if (!matrix_equal(compose(sdr.h, lifted, cap), {}, big.objects(), cap) ||
        !matrix_equal(compose(lifted, sdr.h, cap), {}, big.objects(), cap))
      throw std::logic_error("lifted family does not annihilate h");
    if (!matrix_equal(compose(sdr.f, compose(lifted, sdr.g, cap), cap), xi[i], small.objects(), cap))
      throw std::logic_error("f xi' g != xi");
    out.xi_big.push_back(std::move(lifted));
  }
  out.big_deformed = strict_deformation(big, out.xi_big, phi, params, cap);
  out.small_deformed = strict_deformation(small, xi, phi, params, cap);
  SdrCheck chk = verify_sdr(out.big_deformed, out.small_deformed, sdr);
  if (!chk.pass) throw std::logic_error("lifted SDR fails: " + chk.failure);
  return out;
}

namespace {

void param_monomials(const std::vector<Symbol>& params, int cap, std::vector<Monomial>& out) {
  out.clear();
  std::vector<std::pair<Symbol, int>> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
    if (i == params.size()) {
      out.push_back(Monomial::from_factors(cur));
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      if (e) cur.emplace_back(params[i], e);
      rec(i + 1, rem - e);
      if (e) cur.pop_back();
    }
  };
  rec(0, cap);
}

}  // namespace

ComplexData unroll_data(const CurvedComplex& c, int cap) {
  if (cap < 0) throw std::invalid_argument("unrolling needs a finite cap");
  std::vector<Monomial> mons;
  param_monomials(c.params(), cap, mons);
  std::map<Monomial, int> mpos;
  for (std::size_t i = 0; i < mons.size(); ++i) mpos[mons[i]] = static_cast<int>(i);
  int nm = static_cast<int>(mons.size());
  ComplexData d;
  for (int o = 0; o < c.size(); ++o)
    for (const auto& m : mons) {
      ComplexObject obj = c.objects()[static_cast<std::size_t>(o)];
      obj.shift += m.degree();
      if (!m.is_one()) obj.label += "." + to_string(m);
      d.objects.push_back(std::move(obj));
    }
  for (const auto& [key, p] : c.connection())
    for (const auto& [par, part] : p.by_parameter()) {
      for (const auto& [s, e] : par.factors())
        if (!s.is_parameter()) throw std::invalid_argument("cannot unroll an opaque entry");
      for (int i = 0; i < nm; ++i) {
        auto it = mpos.find(mons[static_cast<std::size_t>(i)] * par);
        if (it == mpos.end()) continue;
        add_entry(d.conn, key.first * nm + it->second, key.second * nm + i, part);
      }
    }
  return d;
}

CurvedComplex unroll(const CurvedComplex& c, int cap) {
  for (const auto& o : c.objects())
    if (!o.ring->is_zero(c.curvature())) throw std::invalid_argument("cannot unroll a curved complex");
  return CurvedComplex(unroll_data(c, cap));
}

TriSeries homology_truncated(const CurvedComplex& c0, const Window& w) {
  CurvedComplex c = c0.params().empty() ? c0 : unroll(c0, c0.cap());
  for (const auto& o : c.objects())
    if (!o.ring->is_zero(c.curvature())) throw std::invalid_argument("homology of a curved complex");
  for (const auto& [key, p] : c.connection())
    if (p.any_symbol([](const Symbol& s) { return !s.is_ring(); }))
      throw std::invalid_argument("homology needs ring-valued entries");
  int n = c.size();
  std::map<int, std::vector<std::pair<int, const Poly*>>> out_edges;
  for (const auto& [key, p] : c.connection()) out_edges[key.second].emplace_back(key.first, &p);

  // Basis of the chain group at a degree: (object, ring degree, offset).
  struct Block {
    int obj;
    int rdeg;
    int offset;
    int dim;
  };
  auto blocks_at = [&](const MultiDegree& D, int& total) {
    std::vector<Block> bl;
    total = 0;
    for (int o = 0; o < n; ++o) {
      MultiDegree od = c.objects()[static_cast<std::size_t>(o)].degree();
      if (od.a != D.a || od.t != D.t) continue;
      int rd = D.q - od.q;
      int dim = c.objects()[static_cast<std::size_t>(o)].ring->graded_dim(rd);
      if (dim == 0) continue;
      bl.push_back({o, rd, total, dim});
      total += dim;
    }
    return bl;
  };
  auto rank_at = [&](const MultiDegree& D) {
    int ns = 0, nt = 0;
    auto src = blocks_at(D, ns);
    auto tgt = blocks_at(D + kT, nt);
    if (ns == 0 || nt == 0) return 0;
    std::map<int, const Block*> tgt_by_obj;
    for (const auto& b : tgt) tgt_by_obj[b.obj] = &b;
    std::vector<SparseVec> cols;
    for (const auto& b : src) {
      const RingSpec& sr = *c.objects()[static_cast<std::size_t>(b.obj)].ring;
      const auto& basis = sr.standard_monomials(b.rdeg);
      for (const auto& m : basis) {
        std::map<int, Rational> col;
        auto it = out_edges.find(b.obj);
        if (it != out_edges.end())
          for (const auto& [r, p] : it->second) {
            auto tb = tgt_by_obj.find(r);
            if (tb == tgt_by_obj.end()) continue;
            const RingSpec& tr = *c.objects()[static_cast<std::size_t>(r)].ring;
            Poly img = *p * Poly::mono(m);
            for (const auto& [i, x] : tr.coordinates(img, tb->second->rdeg)) col[tb->second->offset + i] += x;
          }
        cols.push_back(sparse_from_map(col));
      }
    }
    return rank_of(cols);
  };
  TriSeries s(w);
  for (int a = w.amin; a <= w.amax; ++a)
    for (int q = w.qmin; q <= w.qmax; ++q)
      for (int t = w.tmin; t <= w.tmax; ++t) {
        MultiDegree D{a, q, t};
        int dim = 0;
        blocks_at(D, dim);
        if (dim == 0) continue;
        int h = dim - rank_at(D) - rank_at(D - kT);
        s.add(D, h);
      }
  return s;
}

bool exterior_relations_hold(int n) {
  int N = 1 << n;
  using M = std::vector<std::vector<int>>;
  auto zero = [&] { return M(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(N), 0)); };
  auto mul = [&](const M& a, const M& b) {
    M r = zero();
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k)
        if (a[i][k])
          for (int j = 0; j < N; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
  };
  auto plus = [&](const M& a, const M& b) {
    M r = a;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r[i][j] += b[i][j];
    return r;
  };
  std::vector<M> th, dual;
  for (int i = 0; i < n; ++i) {
    M t = zero(), d = zero();
    for (unsigned S = 0; S < static_cast<unsigned>(N); ++S) {
      int sgn = popcount_below(S, i) % 2 ? -1 : 1;
      if (!(S & (1u << i))) t[S | (1u << i)][S] = sgn;
      else d[S ^ (1u << i)][S] = sgn;
    }
    th.push_back(t);
    dual.push_back(d);
  }
  M id = zero();
  for (int i = 0; i < N; ++i) id[i][i] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (plus(mul(th[i], th[j]), mul(th[j], th[i])) != zero()) return false;
      if (plus(mul(dual[i], dual[j]), mul(dual[j], dual[i])) != zero()) return false;
      M anti = plus(mul(dual[i], th[j]), mul(th[j], dual[i]));
      if (anti != (i == j ? id : zero())) return false;
    }
  return true;
}

}  // namespace fraylab
