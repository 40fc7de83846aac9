#include "fraylab/json_io.hpp"

#include <stdexcept>

namespace fraylab {

Json to_json(const MultiDegree& d) { return Json::array({d.a, d.q, d.t}); }

MultiDegree degree_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("degree must be [a, q, t]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

namespace {

const char* kind_tag(SymKind k) {
  switch (k) {
    case SymKind::E: return "e";
    case SymKind::P: return "p";
    case SymKind::X: return "x";
    case SymKind::U: return "u";
    case SymKind::Y: return "y";
    case SymKind::V: return "v";
    case SymKind::Opaque: return "op";
  }
  return "?";
}

Symbol symbol_from(SymKind kind, int block, int k, int side) {
  switch (kind) {
    case SymKind::E: return e_sym(block, k, side);
    case SymKind::P: return p_sym(block, k, side);
    case SymKind::X: return x_sym(block, side);
    case SymKind::U: return u_sym(k, block);
    case SymKind::Y: return y_sym(block, k);
    case SymKind::V: return v_sym(k, block);
    case SymKind::Opaque: return opaque_sym(k, {});
  }
  throw std::invalid_argument("bad kind");
}

SymKind kind_from_tag(const std::string& s) {
  for (SymKind k : {SymKind::E, SymKind::P, SymKind::X, SymKind::U, SymKind::Y, SymKind::V, SymKind::Opaque})
    if (s == kind_tag(k)) return k;
  throw std::invalid_argument("unknown symbol kind " + s);
}

}  // namespace

Json to_json(const Monomial& m) {
  Json out = Json::array();
  for (const auto& [s, e] : m.factors()) {
    Json f = Json::array({s.block, s.k, s.side, e});
    if (s.kind != SymKind::E) f.push_back(kind_tag(s.kind));
    if (s.kind == SymKind::Opaque) f.push_back(to_json(s.deg));
    out.push_back(std::move(f));
  }
  return out;
}

Monomial monomial_from_json(const Json& j) {
  std::vector<std::pair<Symbol, int>> f;
  for (const auto& x : j) {
    if (!x.is_array() || x.size() < 4) throw std::invalid_argument("bad monomial factor");
    SymKind kind = x.size() > 4 ? kind_from_tag(x[4].get<std::string>()) : SymKind::E;
    Symbol s = symbol_from(kind, x[0].get<int>(), x[1].get<int>(), x[2].get<int>());
    if (kind == SymKind::Opaque && x.size() > 5) s.deg = degree_from_json(x[5]);
    f.emplace_back(s, x[3].get<int>());
  }
  return Monomial::from_factors(std::move(f));
}

Json to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({{"monomial", to_json(m)}, {"coeff", to_string(c)}});
  return out;
}

Poly poly_from_json(const Json& j) {
  Poly p;
  for (const auto& t : j) p.add_term(monomial_from_json(t.at("monomial")), parse_rational(t.at("coeff").get<std::string>()));
  return p;
}

Json to_json(const Window& w) {
  return {{"a", {w.amin, w.amax}}, {"q", {w.qmin, w.qmax}}, {"t", {w.tmin, w.tmax}}};
}

Window window_from_json(const Json& j) {
  Window w;
  w.amin = j.at("a")[0];
  w.amax = j.at("a")[1];
  w.qmin = j.at("q")[0];
  w.qmax = j.at("q")[1];
  w.tmin = j.at("t")[0];
  w.tmax = j.at("t")[1];
  return w;
}

Json to_json(const TriSeries& s) {
  Json terms = Json::array();
  for (const auto& [d, c] : s.coeffs()) terms.push_back({{"a", d.a}, {"q", d.q}, {"t", d.t}, {"coeff", to_string(c)}});
  return {{"window", to_json(s.window())}, {"terms", terms}};
}

TriSeries series_from_json(const Json& j) {
  TriSeries s(window_from_json(j.at("window")));
  for (const auto& t : j.at("terms"))
    s.add({t.at("a").get<int>(), t.at("q").get<int>(), t.at("t").get<int>()},
          parse_rational(t.at("coeff").get<std::string>()));
  return s;
}

Json to_json(const Composition& c) { return Json(c.parts); }

Json to_json(const CurvedComplex& c) {
  Json objs = Json::array();
  for (const auto& o : c.objects())
    objs.push_back({{"shift", to_json(o.shift)}, {"qshift", o.qshift}, {"degree", to_json(o.degree())},
                    {"ring", o.ring->id()}, {"label", o.label}});
  Json conn = Json::array();
  for (const auto& [par, mat] : c.by_parameter()) {
    Json entries = Json::array();
    for (const auto& [key, p] : mat) entries.push_back({key.first, key.second, to_json(p)});
    conn.push_back({{"parameter", to_json(par)}, {"entries", entries}});
  }
  Json curv = Json::array();
  for (const auto& [coeff, par] : c.curvature_terms())
    curv.push_back({{"parameter", to_json(par)}, {"coeff", to_json(coeff)}});
  Json params = Json::array();
  for (const auto& s : c.params()) params.push_back(to_json(Monomial(s)));
  return {{"schema", kSchema}, {"objects", objs}, {"connection", conn}, {"curvature", curv},
          {"params", params}, {"cap", c.cap()}};
}

Json to_json(const FrayedProjector& p) {
  Json j = to_json(p.complex);
  j["lambda"] = to_json(p.lambda);
  j["variant"] = to_string(p.variant);
  j["caps"] = p.cap;
  j["qshift"] = p.qshift;
  return j;
}

Json to_json(const Mismatch& m) {
  return {{"degree", to_json(m.degree)}, {"got", to_string(m.got)}, {"expected", to_string(m.expected)}};
}

Json to_json(const UnknotReport& r) {
  Json mism = Json::array();
  for (const auto& m : r.mismatches) mism.push_back(to_json(m));
  Json j = {{"schema", kSchema}, {"variant", to_string(r.variant)}, {"k", r.k}, {"cap", r.cap},
            {"window", to_json(r.window)}, {"match", r.match}, {"mismatches", mism},
            {"computed", to_json(r.computed)}, {"expected", to_json(r.expected)}};
  if (r.monomial_shift) j["monomial_shift"] = *r.monomial_shift;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace fraylab
