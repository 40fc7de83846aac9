#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fraylab/suites.hpp"

using namespace fraylab;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<int> qmin, qmax, tmax, amax, cap;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed (default: FRAYLAB_SEED or 0)");
  app->add_option("--qmin", c.qmin);
  app->add_option("--qmax", c.qmax);
  app->add_option("--tmax", c.tmax);
  app->add_option("--amax", c.amax);
  app->add_option("--cap", c.cap, "maximal parameter-monomial degree");
  app->add_option("--out", c.out, "write output to a file instead of stdout");
  app->add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}));
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("FRAYLAB_SEED")) return std::stoull(env);
  return 0;
}

void emit(const Common& c, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot open " + c.out);
  f << body;
}

Window with_flags(Window w, const Common& c) {
  if (c.qmin) w.qmin = *c.qmin;
  if (c.qmax) w.qmax = *c.qmax;
  if (c.tmax) w.tmax = *c.tmax;
  if (c.amax) w.amax = *c.amax;
  return w;
}

std::string text_report(const VerificationReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) os << (c.status == "pass" ? "PASS " : c.status == "fail" ? "FAIL " : "SKIP ")
                                    << c.name << " " << c.params.dump() << "\n";
  os << r.suite << ": " << (r.all_pass() ? "pass" : "fail") << " (" << r.checks.size() << " checks)\n";
  return os.str();
}

Json family_json(const AFamily& fam) {
  Json out = Json::array();
  for (const auto& [key, p] : fam.entries())
    out.push_back({{"i", key[0]}, {"j", key[1]}, {"k", key[2]}, {"poly", to_json(p)}, {"text", to_string(p)}});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fraylab: curved complexes, frayed projectors and Hochschild homology checks"};
  app.require_subcommand(1);

  Common common;
  std::string suite, variant, lambda_s, cn_variant = "plain", family = "a-ijk", b_s;
  std::optional<int> k, n, max_n, cn;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  add_common(verify, common);
  verify->add_option("--variant", variant);
  verify->add_option("--k", k);
  verify->add_option("--lambda", lambda_s);
  verify->add_option("--n", n);
  verify->add_option("--max-n", max_n);

  auto* unknot = app.add_subcommand("unknot", "compute a colored unknot invariant");
  add_common(unknot, common);
  unknot->add_option("--variant", variant)->required();
  unknot->add_option("--k", k)->required();

  std::string object;
  auto* dump = app.add_subcommand("dump", "serialize a projector, complex or polynomial family");
  dump->add_option("object", object)->required()->check(CLI::IsMember({"projector", "complex", "poly"}));
  add_common(dump, common);
  dump->add_option("--lambda", lambda_s);
  dump->add_option("--variant", variant);
  dump->add_option("--cn", cn);
  dump->add_option("--family", family)->check(CLI::IsMember({"a-ijk", "thin", "g"}));
  dump->add_option("--b", b_s);
  dump->add_option("--n", n);

  CLI11_PARSE(app, argc, argv);

  try {
    std::uint64_t seed = resolve_seed(common);
    bool json = common.format == "json";

    if (verify->parsed()) {
      SuiteOptions o;
      o.seed = seed;
      o.qmin = common.qmin;
      o.qmax = common.qmax;
      o.tmax = common.tmax;
      o.amax = common.amax;
      o.cap = common.cap;
      if (!variant.empty()) o.variant = variant;
      o.k = k;
      if (!lambda_s.empty()) o.lambda = Composition::parse(lambda_s);
      o.n = n;
      o.max_n = max_n;
      VerificationReport r = run_suite(suite, o);
      emit(common, json ? to_json(r).dump(2) + "\n" : text_report(r));
      return r.all_pass() ? 0 : 1;
    }

    if (unknot->parsed()) {
      Variant v = parse_variant(variant);
      bool plain = v == Variant::Intrinsic || v == Variant::Finite;
      int cap = common.cap.value_or(plain ? 0 : 3);
      Window w = with_flags(table_window(v, *k, cap), common);
      UnknotReport r = unknot_invariant(v, *k, cap, w);
      if (json) {
        emit(common, to_json(r).dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "computed: " << to_string(r.computed) << "\nexpected: " << to_string(r.expected)
           << "\nmatch: " << (r.match ? "yes" : "no") << "\n";
        if (r.monomial_shift) os << "monomial shift: q^" << *r.monomial_shift << "\n";
        if (!r.note.empty()) os << "note: " << r.note << "\n";
        emit(common, os.str());
      }
      return r.match || r.monomial_shift ? 0 : 1;
    }

    Json j;
    std::string text;
    if (object == "projector") {
      if (lambda_s.empty()) throw std::invalid_argument("dump projector needs --lambda");
      ProjectorVariant pv = parse_projector_variant(variant.empty() ? "finite" : variant);
      FrayedProjector p = make_projector(Composition::parse(lambda_s), pv, common.cap.value_or(2));
      j = to_json(p);
    } else if (object == "complex") {
      if (!cn) throw std::invalid_argument("dump complex needs --cn");
      CnVariant v = parse_cn_variant(variant.empty() ? "plain" : variant);
      j = to_json(cn_family(*cn, v));
      j["cn"] = *cn;
      j["variant"] = to_string(v);
    } else {
      j = {{"schema", kSchema}, {"family", family}};
      if (family == "g") {
        if (!n) throw std::invalid_argument("dump poly --family g needs --n");
        Json list = Json::array();
        auto g = g_polys(*n);
        for (std::size_t i = 0; i < g.size(); ++i)
          list.push_back({{"i", i + 1}, {"poly", to_json(g[i])}, {"text", to_string(g[i])}});
        j["n"] = *n;
        j["polys"] = list;
      } else if (family == "thin") {
        if (!n) throw std::invalid_argument("dump poly --family thin needs --n");
        j["n"] = *n;
        j["polys"] = family_json(a_thin_recursive(*n));
      } else {
        if (b_s.empty()) throw std::invalid_argument("dump poly --family a-ijk needs --b");
        Composition b = Composition::parse(b_s);
        j["b"] = to_json(b);
        j["polys"] = family_json(default_a_family(b));
      }
    }
    if (json) {
      emit(common, j.dump(2) + "\n");
    } else {
      emit(common, j.dump() + "\n");
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
