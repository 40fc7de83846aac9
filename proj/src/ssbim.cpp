#include "fraylab/ssbim.hpp"

#include <mutex>
#include <stdexcept>

namespace fraylab {

int ell(const Composition& a) {
  int s = 0;
  for (int p : a.parts) s += p * (p - 1) / 2;
  return s;
}

int cross_ell(const Composition& a) {
  int s = 0;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    for (std::size_t j = i + 1; j < a.parts.size(); ++j) s += a.parts[i] * a.parts[j];
  return s;
}

std::vector<Symbol> block_generators(const Composition& b, int side) {
  std::vector<Symbol> g;
  for (int j = 1; j <= b.size(); ++j)
    for (int k = 1; k <= b[j]; ++k) g.push_back(e_sym(j, k, side));
  return g;
}

namespace {

std::mutex g_ring_mu;
std::map<std::tuple<Composition, Composition, bool>, RingPtr> g_rings;

RingPtr cached_ring(const Composition& top, const Composition& bottom, bool identity) {
  std::lock_guard<std::mutex> lock(g_ring_mu);
  auto key = std::make_tuple(top, bottom, identity);
  auto it = g_rings.find(key);
  if (it != g_rings.end()) return it->second;
  std::vector<Symbol> gens = block_generators(top, 0);
  for (const auto& s : block_generators(bottom, 1)) gens.push_back(s);
  std::vector<Poly> rels;
  RingSpec::Options opts;
  opts.layout = {top, bottom, {}};
  std::string id;
  if (identity) {
    id = "1_" + to_string(top);
    for (int j = 1; j <= top.size(); ++j) {
      for (int k = 1; k <= top[j]; ++k) rels.push_back(block_difference(j, k));
      opts.locus_groups.push_back({j});
    }
  } else {
    id = "W^" + to_string(top) + "_" + to_string(bottom);
    for (int i = 1; i <= top.total(); ++i)
      rels.push_back(elementary_of_total(i, top, 0) - elementary_of_total(i, bottom, 1));
    std::vector<int> all;
    for (int j = 1; j <= top.size(); ++j) all.push_back(j);
    opts.locus_groups.push_back(all);
  }
  auto ring = std::make_shared<const RingSpec>(id, gens, rels, opts);
  g_rings.emplace(key, ring);
  return ring;
}

Poly sym(const Symbol& s) { return Poly::sym(s); }

}  // namespace

Poly block_difference(int j, int k) { return sym(e_sym(j, k, 0)) - sym(e_sym(j, k, 1)); }

MergeSplitBimodule build_W(const Composition& top, const Composition& bottom) {
  if (top.total() != bottom.total()) throw std::invalid_argument("merge-split totals differ");
  Composition n{top.total()};
  return {top, bottom, cached_ring(top, bottom, false), ell(bottom) - ell(n),
          "W^" + to_string(top) + "_" + to_string(bottom)};
}

MergeSplitBimodule build_identity(const Composition& lambda) {
  return {lambda, lambda, cached_ring(lambda, lambda, true), 0, "1_" + to_string(lambda)};
}

Laurent digon_rank(int j, int k) { return quantum_binomial(j + k, k); }

Laurent blamgon_rank(const Composition& lambda) { return f_factor(lambda.total(), lambda); }

Laurent rank_over_bottom(const MergeSplitBimodule& m, int qmax) {
  Laurent h;
  for (int d = 0; d <= qmax; d += 2) {
    int dim = m.ring->graded_dim(d);
    if (dim) h.add({0, d, 0}, dim);
  }
  for (int p : m.bottom.parts)
    for (int k = 1; k <= p; ++k) h = h * (Laurent(1) - Laurent::q(2 * k));
  Laurent out;
  for (const auto& [d, c] : h.terms())
    if (d.q <= qmax) out.add(d + MultiDegree{0, m.qshift, 0}, c);
  return out;
}

std::string to_string(ProjectorVariant v) {
  switch (v) {
    case ProjectorVariant::Finite: return "finite";
    case ProjectorVariant::DefFinite: return "def_finite";
    case ProjectorVariant::Infinite: return "infinite";
    case ProjectorVariant::DefInfinite: return "def_infinite";
  }
  return "?";
}

ProjectorVariant parse_projector_variant(const std::string& s) {
  if (s == "finite") return ProjectorVariant::Finite;
  if (s == "def_finite") return ProjectorVariant::DefFinite;
  if (s == "infinite") return ProjectorVariant::Infinite;
  if (s == "def_infinite") return ProjectorVariant::DefInfinite;
  throw std::invalid_argument("unknown projector variant: " + s);
}

AFamily default_a_family(const Composition& lambda) {
  if (lambda == Composition::ones(lambda.total())) return a_thin_recursive(lambda.total());
  return a_family(lambda);
}

std::vector<std::pair<int, int>> koszul_index(const Composition& lambda) {
  std::vector<std::pair<int, int>> idx;
  for (int j = 1; j <= lambda.size(); ++j)
    for (int k = 1; k <= lambda[j]; ++k) idx.emplace_back(j, k);
  return idx;
}

Poly y_curvature(const Composition& lambda) {
  Poly f;
  for (auto [j, k] : koszul_index(lambda)) f += block_difference(j, k) * sym(y_sym(j, k));
  return f;
}

Poly u_curvature(const Composition& lambda) {
  Poly f;
  for (int i = 1; i <= lambda.total(); ++i)
    f += (elementary_of_total(i, lambda, 0) - elementary_of_total(i, lambda, 1)) * sym(u_sym(i));
  return f;
}

namespace {

FrayedProjector build_projector(const Composition& lambda, ProjectorVariant v, int cap,
                                const AFamily* a_in) {
  MergeSplitBimodule w = build_W(lambda, lambda);
  bool with_y = v == ProjectorVariant::DefFinite || v == ProjectorVariant::DefInfinite;
  bool with_u = v == ProjectorVariant::Infinite || v == ProjectorVariant::DefInfinite;
  AFamily a;
  if (with_u) {
    a = a_in ? *a_in : default_a_family(lambda);
    if (a.composition() != lambda) throw std::invalid_argument("a-family composition mismatch");
  }
  ComplexData base;
  base.objects.push_back({MultiDegree{}, w.qshift, w.ring, w.label});
  std::vector<OddTwist> twists;
  for (auto [j, k] : koszul_index(lambda)) {
    OddTwist t;
    t.theta_degree = {0, -2 * k, 1};
    t.forward[{0, 0}] = block_difference(j, k);
    Poly back;
    if (with_y) back += sym(y_sym(j, k));
    if (with_u)
      for (int i = 1; i <= lambda.total(); ++i) back -= a.at(i, j, k) * sym(u_sym(i));
    if (!back.is_zero()) t.backward[{0, 0}] = back;
    twists.push_back(std::move(t));
  }
  ComplexData d = exterior_twist(base, twists);
  if (with_y) {
    d.curvature += y_curvature(lambda);
    for (auto [j, k] : koszul_index(lambda)) d.params.push_back(y_sym(j, k));
  }
  if (with_u) {
    d.curvature -= u_curvature(lambda);
    for (int i = 1; i <= lambda.total(); ++i) d.params.push_back(u_sym(i));
  }
  d.cap = cap;
  FrayedProjector p;
  p.lambda = lambda;
  p.variant = v;
  p.complex = CurvedComplex(std::move(d));
  p.cap = cap;
  p.qshift = w.qshift;
  return p;
}

}  // namespace

FrayedProjector finite_projector(const Composition& lambda) {
  return build_projector(lambda, ProjectorVariant::Finite, -1, nullptr);
}
FrayedProjector deformed_finite_projector(const Composition& lambda, int cap) {
  return build_projector(lambda, ProjectorVariant::DefFinite, cap, nullptr);
}
FrayedProjector infinite_projector(const Composition& lambda, int cap, const AFamily* a) {
  if (cap < 0) throw std::invalid_argument("infinite projectors need a cap");
  return build_projector(lambda, ProjectorVariant::Infinite, cap, a);
}
FrayedProjector deformed_infinite_projector(const Composition& lambda, int cap, const AFamily* a) {
  if (cap < 0) throw std::invalid_argument("infinite projectors need a cap");
  return build_projector(lambda, ProjectorVariant::DefInfinite, cap, a);
}
FrayedProjector make_projector(const Composition& lambda, ProjectorVariant v, int cap, const AFamily* a) {
  switch (v) {
    case ProjectorVariant::Finite: return finite_projector(lambda);
    case ProjectorVariant::DefFinite: return deformed_finite_projector(lambda, cap);
    case ProjectorVariant::Infinite: return infinite_projector(lambda, cap, a);
    case ProjectorVariant::DefInfinite: return deformed_infinite_projector(lambda, cap, a);
  }
  throw std::invalid_argument("bad variant");
}

std::string to_string(CnVariant v) {
  switch (v) {
    case CnVariant::Plain: return "plain";
    case CnVariant::Y: return "y";
    case CnVariant::U: return "u";
    case CnVariant::YU: return "yu";
  }
  return "?";
}

CnVariant parse_cn_variant(const std::string& s) {
  if (s == "plain") return CnVariant::Plain;
  if (s == "y") return CnVariant::Y;
  if (s == "u") return CnVariant::U;
  if (s == "yu") return CnVariant::YU;
  throw std::invalid_argument("unknown C_n variant: " + s);
}

namespace {

bool has_y(CnVariant v) { return v == CnVariant::Y || v == CnVariant::YU; }
bool has_u(CnVariant v) { return v == CnVariant::U || v == CnVariant::YU; }

Poly x_diff_n1() { return block_difference(2, 1); }

std::vector<Symbol> cn_params(int n, CnVariant v) {
  std::vector<Symbol> p;
  if (has_y(v)) p.push_back(y_sym(2, 1));
  if (has_u(v))
    for (int i = 1; i <= n; ++i) p.push_back(u_sym(i));
  return p;
}

}  // namespace

Poly cn_backward(int n, CnVariant v) {
  Poly b;
  if (has_y(v)) b += sym(y_sym(2, 1));
  if (has_u(v)) {
    auto g = g_polys(n);
    for (int i = 1; i <= n; ++i) b -= g[static_cast<std::size_t>(i - 1)] * sym(u_sym(i));
  }
  return b;
}

Poly cn_curvature(int n, CnVariant v) {
  Poly f;
  if (has_y(v)) f += x_diff_n1() * sym(y_sym(2, 1));
  if (has_u(v))
    for (int i = 1; i <= n; ++i) f += block_difference(1, i) * sym(u_sym(i));
  return f;
}

CurvedComplex cn_family(int n, CnVariant v) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Composition b{n, 1};
  MergeSplitBimodule w = build_W(b, b);
  MergeSplitBimodule one = build_identity(b);
  ComplexData d;
  d.objects.push_back({{0, n, 0}, w.qshift, w.ring, w.label});
  d.objects.push_back({{0, n - 2, 1}, w.qshift, w.ring, w.label});
  d.objects.push_back({{0, -2, 2}, one.qshift, one.ring, one.label});
  d.conn[{1, 0}] = x_diff_n1();
  d.conn[{2, 1}] = sym(unzip_sym());
  Poly back = cn_backward(n, v);
  if (!back.is_zero()) d.conn[{0, 1}] = back;
  d.curvature = cn_curvature(n, v);
  d.params = cn_params(n, v);
  return CurvedComplex(std::move(d));
}

namespace {

CurvedComplex iota_source(const CurvedComplex& c) {
  ComplexData x;
  x.objects.push_back(c.objects()[2]);
  x.curvature = c.curvature();
  x.params = c.params();
  x.cap = c.cap();
  return CurvedComplex(std::move(x));
}

}  // namespace

ConeIotaResult cone_iota_eliminate(int n, CnVariant v) {
  CurvedComplex c = cn_family(n, v);
  CurvedComplex x = iota_source(c);
  Matrix iota;
  iota[{2, 0}] = Poly(1);
  CurvedComplex k = cone(iota, x, c);
  Elimination e = gaussian_eliminate(k, 3, 0);
  ConeIotaResult r;
  r.reduced = e.reduced;
  r.matches = true;
  auto fail = [&](const std::string& m) {
    r.matches = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += m;
  };
  if (e.kept != std::vector<int>{1, 2}) fail("unexpected surviving objects");
  if (r.reduced.size() != 2) {
    fail("reduced complex does not have two objects");
    return r;
  }
  if (!(r.reduced.entry(1, 0) == x_diff_n1())) fail("forward map differs");
  if (!(r.reduced.entry(0, 1) == cn_backward(n, v))) fail("backward map differs");
  if (r.reduced.connection().size() != (cn_backward(n, v).is_zero() ? 1u : 2u)) fail("extra entries");
  Poly comp = r.reduced.entry(0, 1) * r.reduced.entry(1, 0);
  if (!r.reduced.objects()[0].ring->equal(comp, c.curvature())) fail("backward*forward differs from curvature");
  return r;
}

Poly refine_to_thin(const Poly& p, int n) {
  Composition thin = Composition::ones(n);
  return p.substitute([&](const Symbol& s) -> std::optional<Poly> {
    if (s.kind != SymKind::E) return std::nullopt;
    if (s.block == 1) return elementary_of_total(s.k, thin, s.side);
    if (s.block == 2 && s.k == 1) return sym(e_sym(n + 1, 1, s.side));
    throw std::invalid_argument("symbol outside (n,1) coordinates");
  });
}

namespace {

CurvedComplex thin_tau(int n, int cap, const OddTwist& last) {
  Composition thin = Composition::ones(n + 1);
  MergeSplitBimodule w = build_W(thin, thin);
  AFamily a = a_thin_recursive(n);
  ComplexData base;
  base.objects.push_back({MultiDegree{}, w.qshift, w.ring, w.label});
  std::vector<OddTwist> tw;
  for (int j = 1; j <= n; ++j) {
    OddTwist t;
    t.theta_degree = {0, -2, 1};
    t.forward[{0, 0}] = block_difference(j, 1);
    Poly back;
    for (int i = 1; i <= n; ++i) back -= a.at(i, j, 1) * sym(u_sym(i));
    t.backward[{0, 0}] = back;
    tw.push_back(std::move(t));
  }
  tw.push_back(last);
  ComplexData d = exterior_twist(base, tw);
  d.curvature = -u_curvature(thin);
  for (int i = 1; i <= n + 1; ++i) d.params.push_back(u_sym(i));
  d.cap = cap;
  return CurvedComplex(std::move(d));
}

}  // namespace

CurvedComplex tau_complex(int n, int cap) {
  auto g = g_polys(n);
  OddTwist last;
  last.theta_degree = {0, -2, 1};
  last.forward[{0, 0}] = block_difference(n + 1, 1);
  Poly back;
  for (int i = 1; i <= n + 1; ++i) back -= refine_to_thin(g[static_cast<std::size_t>(i - 1)], n) * sym(u_sym(i));
  last.backward[{0, 0}] = back;
  return thin_tau(n, cap, last);
}

LadderResult ladder_collapse(int n, int cap) {
  if (cap < 1) throw std::invalid_argument("ladder needs cap >= 1");
  CurvedComplex c = cn_family(n, CnVariant::U);
  ComplexData yd = c.data();
  yd.params.push_back(u_sym(n + 1));
  yd.cap = cap;
  CurvedComplex y(std::move(yd));
  CurvedComplex x = iota_source(y);
  auto g = g_polys(n);
  const Poly& gn1 = g.back();
  Matrix phi;
  phi[{2, 0}] = Poly(1);
  phi[{0, 0}] = gn1 * sym(u_sym(n + 1)) * sym(zip_sym());
  CurvedComplex k = cone(phi, x, y);
  Elimination e = gaussian_eliminate(k, 3, 0);

  LadderResult r;
  r.matches = true;
  auto fail = [&](const std::string& m) {
    r.matches = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += m;
  };
  // zip*unzip stands for the composite W -> 1 -> W, which is multiplication by g_{n+1};
  // it is only well defined because g_{n+1} kills x_{n+1} - x'_{n+1} in W.
  const RingSpec& wring = *e.reduced.objects()[0].ring;
  if (!wring.is_zero(gn1 * x_diff_n1())) fail("g_{n+1}(x_{n+1}-x'_{n+1}) is not zero in W");
  std::map<Symbol, Poly> drop{{zip_sym(), Poly(1)}, {unzip_sym(), Poly(1)}};
  r.collapsed = substitute_parameters(e.reduced, drop, e.reduced.params());
  Poly want_back = cn_backward(n, CnVariant::U) - gn1 * sym(u_sym(n + 1));
  if (!(r.collapsed.entry(1, 0) == x_diff_n1())) fail("forward rung differs");
  if (!(r.collapsed.entry(0, 1) == want_back)) fail("downward maps differ from -sum g_i u_i");

  OddTwist last;
  last.theta_degree = r.collapsed.objects()[1].degree() - r.collapsed.objects()[0].degree();
  last.forward[{0, 0}] = refine_to_thin(r.collapsed.entry(1, 0), n);
  last.backward[{0, 0}] = refine_to_thin(r.collapsed.entry(0, 1), n);
  r.tau = thin_tau(n, cap, last);
  CurvedComplex direct = tau_complex(n, cap);
  if (!(r.tau.connection() == direct.connection())) fail("tau_n differs from the direct construction");
  return r;
}

namespace {

std::map<Symbol, Poly> forward_substitution(int n) {
  Poly xp = sym(e_sym(n + 1, 1, 1));
  std::map<Symbol, Poly> m;
  for (int i = 1; i <= n; ++i) m[u_sym(i)] = sym(u_sym(i)) + xp * sym(u_sym(i + 1));
  return m;
}

std::map<Symbol, Poly> inverse_substitution(int n) {
  Poly xp = sym(e_sym(n + 1, 1, 1));
  std::map<Symbol, Poly> m;
  for (int i = 1; i <= n + 1; ++i) {
    Poly s;
    for (int k = 0; i + k <= n + 1; ++k) s += (-xp).pow(k) * sym(u_sym(i + k));
    m[u_sym(i)] = s;
  }
  return m;
}

}  // namespace

BasisChangeReport basis_change_check(int n, int cap) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  BasisChangeReport rep;
  AFamily small = a_thin_recursive(n);
  AFamily big = a_thin_recursive(n + 1);
  auto g = g_polys(n);
  Poly xp = sym(e_sym(n + 1, 1, 1));
  auto a_lambda = [&](int i, int j) -> Poly {
    if (i < 1) return Poly();
    if (j == n + 1) return refine_to_thin(g[static_cast<std::size_t>(i - 1)], n);
    if (i == n + 1) return Poly();
    return small.at(i, j, 1);
  };
  rep.identity_ok = true;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) {
      Poly lhs = big.at(i, j, 1) - a_lambda(i, j);
      Poly rhs = xp * a_lambda(i - 1, j);
      if (!(lhs == rhs)) {
        rep.identity_ok = false;
        rep.failures.push_back("identity fails at i=" + std::to_string(i) + ", j=" + std::to_string(j));
      }
    }
  CurvedComplex tau_n = tau_complex(n, cap);
  CurvedComplex tau_n1 = infinite_projector(Composition::ones(n + 1), cap).complex;
  std::vector<Symbol> params;
  for (int i = 1; i <= n + 1; ++i) params.push_back(u_sym(i));
  CurvedComplex fwd = substitute_parameters(tau_n, forward_substitution(n), params);
  rep.forward_ok = fwd.connection() == tau_n1.connection();
  if (!rep.forward_ok) rep.failures.push_back("u_i -> u_i + x' u_{i+1} does not carry tau_n to tau_{n+1}");
  CurvedComplex inv = substitute_parameters(tau_n1, inverse_substitution(n), params);
  rep.inverse_ok = inv.connection() == tau_n.connection();
  if (!rep.inverse_ok) rep.failures.push_back("inverse substitution does not carry tau_{n+1} to tau_n");
  rep.round_trip_ok = true;
  auto f = forward_substitution(n);
  auto b = inverse_substitution(n);
  for (int i = 1; i <= n + 1; ++i) {
    Poly u = sym(u_sym(i));
    if (!(u.substitute(f).substitute(b) == u) || !(u.substitute(b).substitute(f) == u)) {
      rep.round_trip_ok = false;
      rep.failures.push_back("substitutions are not inverse at u" + std::to_string(i));
    }
  }
  return rep;
}

RickardShape rickard_shape(int a, int b, bool positive) {
  if (a < 0 || b < 0) throw std::invalid_argument("colors must be nonnegative");
  RickardShape r{a, b, positive, {}};
  for (int k = 0; k <= std::min(a, b); ++k)
    r.objects.push_back({positive ? MultiDegree{0, -k, k} : MultiDegree{0, k, -k}, k});
  return r;
}

CurvedComplex bundle_substitute(const CurvedComplex& c, const std::map<Symbol, Symbol>& orbit_map) {
  std::map<Symbol, Poly> sub;
  std::vector<Symbol> params;
  for (const auto& p : c.params()) {
    auto it = orbit_map.find(p);
    Symbol t = it == orbit_map.end() ? p : it->second;
    if (!t.is_parameter()) throw std::invalid_argument("orbit map must send parameters to parameters");
    if (t.deg != p.deg) throw std::invalid_argument("bundling must preserve degrees");
    if (it != orbit_map.end()) sub[p] = Poly::sym(t);
    if (std::find(params.begin(), params.end(), t) == params.end()) params.push_back(t);
  }
  return substitute_parameters(c, sub, params);
}

}  // namespace fraylab
