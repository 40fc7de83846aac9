// Runs the ten acceptance criteria at exact tolerance; one PASS/FAIL line each.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "fraylab/suites.hpp"

using namespace fraylab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what + (ok ? " ok" : " FAILED");
}

Outcome from_suite(const std::string& name, const SuiteOptions& opts) {
  VerificationReport r = run_suite(name, opts);
  Outcome o;
  int failed = 0;
  for (const auto& c : r.checks)
    if (c.status == "fail") {
      ++failed;
      if (failed <= 3) std::cerr << "  [" << name << "] failed " << c.name << " " << c.params.dump() << " "
                                 << c.details.dump() << "\n";
    }
  o.pass = failed == 0;
  o.detail = name + ": " + std::to_string(r.checks.size() - static_cast<std::size_t>(failed)) + "/" +
             std::to_string(r.checks.size()) + " checks";
  return o;
}

Outcome criterion1() {
  Outcome o;
  for (int k = 1; k <= 3; ++k) {
    Window w = table_window(Variant::Intrinsic, k, 0);
    TriSeries hh = kr_normalize(hh_bimodule(build_identity(Composition{k}), w).series, unknot_stats(k));
    auto m = hh.compare(expand_rational(unknot_table(Variant::Intrinsic, k), w));
    note(o, m.empty(), "k=" + std::to_string(k) + (m.empty() ? "" : " (" + std::to_string(m.size()) + " mismatches)"));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int k = 1; k <= 2; ++k) {
    UnknotReport r = unknot_invariant(Variant::Finite, k, 0, table_window(Variant::Finite, k, 0));
    std::string d = "k=" + std::to_string(k);
    if (!r.match) {
      d += " (" + std::to_string(r.mismatches.size()) + " mismatches, first at " +
           to_string(r.mismatches.front().degree) + ": got " + to_string(r.mismatches.front().got) +
           ", table " + to_string(r.mismatches.front().expected) + ")";
    }
    note(o, r.match, d);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (int k = 1; k <= 2; ++k) {
    int cap = 3;
    Window w = table_window(Variant::DefFinite, k, cap);
    UnknotReport r = unknot_invariant(Variant::DefFinite, k, cap, w);
    note(o, r.match, "table k=" + std::to_string(k));
    Laurent f = f_factor(k, Composition::ones(k));
    Window pad = w;
    pad.qmin -= 2 * k * k;
    pad.qmax += 2 * k * k;
    TriSeries base = kr_normalize(hh_bimodule(build_identity(Composition{k}), pad).series, unknot_stats(k));
    TriSeries want(w);
    for (const auto& [d1, c1] : base.coeffs())
      for (const auto& [d2, c2] : f.terms()) want.add(d1 + d2, c1 * c2);
    note(o, r.computed.compare(want).empty(), "factor k=" + std::to_string(k));
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  int cap = 3;
  for (auto v : {Variant::Infinite, Variant::DefInfinite}) {
    UnknotReport r1 = unknot_invariant(v, 1, cap, table_window(v, 1, cap));
    note(o, r1.match, to_string(v) + " k=1 exact");
    UnknotReport r2 = unknot_invariant(v, 2, cap, table_window(v, 2, cap));
    bool ok = r2.match || r2.monomial_shift.has_value();
    std::string d = to_string(v) + " k=2";
    if (r2.monomial_shift) d += " up to q^" + std::to_string(*r2.monomial_shift);
    note(o, ok, d);
  }
  return o;
}

Outcome criterion5() {
  SuiteOptions opts;
  opts.max_n = 5;
  return from_suite("a-ijk", opts);
}

Outcome criterion6() {
  SuiteOptions opts;
  opts.max_n = 4;
  return from_suite("psi-rho", opts);
}

Outcome criterion7() {
  SuiteOptions opts;
  opts.max_n = 4;
  return from_suite("g-congruence", opts);
}

Outcome criterion8() {
  SuiteOptions mc;
  mc.max_n = 3;
  mc.cap = 3;
  Outcome a = from_suite("mc", mc);
  SuiteOptions g;
  g.n = 50;
  Outcome b = from_suite("gauss", g);
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

Outcome criterion9() {
  SuiteOptions opts;
  opts.max_n = 5;
  return from_suite("ladder", opts);
}

Outcome criterion10() {
  SuiteOptions opts;
  opts.max_n = 3;
  return from_suite("trace", opts);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"intrinsic unknot table, k=1..3", criterion1},
      {"finite projector table, k=1,2", criterion2},
      {"deformed finite table and factor, k=1,2", criterion3},
      {"infinite variants, k=1 exact, k=2 up to a q-monomial", criterion4},
      {"a_ijk identities and thin reference values", criterion5},
      {"psi/rho dictionary, a<=4", criterion6},
      {"g_i congruences, n<=4", criterion7},
      {"Maurer-Cartan, elimination, SDR side conditions", criterion8},
      {"ladder recursion and cone collapses", criterion9},
      {"trace and digon/blamgon ranks", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line.precision(1);
    line << std::fixed << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  "
         << criteria[i].first << "  [" << o.detail << "] (" << secs << "s)";
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
