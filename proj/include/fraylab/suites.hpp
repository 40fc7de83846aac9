#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraylab/json_io.hpp"

namespace fraylab {

inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::optional<int> qmin, qmax, tmax, amax;
  std::optional<int> cap;
  std::optional<std::string> variant;
  std::optional<int> k;
  std::optional<Composition> lambda;
  std::optional<int> n;
  std::optional<int> max_n;
};

struct CheckResult {
  std::string name;
  Json params = Json::object();
  std::string status = "pass";  // pass, fail or skipped
  Json details = Json::object();
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

Json to_json(const VerificationReport& r);

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite.
VerificationReport run_suite(const std::string& name, const SuiteOptions& opts);

/// Zero-curvature complex over Q[x_1, x_2]: shifted Koszul complexes and contractible
/// pairs, conjugated by a random unipotent degree-zero automorphism.
CurvedComplex random_complex(std::uint64_t seed);

/// The nine reference values of the thin family at n = 3, keyed by (i, j).
std::map<std::pair<int, int>, Poly> thin3_reference();

/// Factor law for a projector built on 1_(n): computed and expected series on w.
struct FactorCheck {
  TriSeries computed;
  TriSeries expected;
  std::vector<Mismatch> mismatches;
};
FactorCheck projector_factor_check(const Composition& lambda, ProjectorVariant v, int cap,
                                   const Window& w);

}  // namespace fraylab
