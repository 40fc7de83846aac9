#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraylab/complex.hpp"
#include "fraylab/qseries.hpp"
#include "fraylab/ssbim.hpp"

namespace fraylab {

enum class GenBasis { Elementary, PowerSum };
std::string to_string(GenBasis b);

/// The exterior generator dual to a polynomial generator of degree q^{2k} sits in degree
/// a q^{kHHZetaSign * 2k}.
inline constexpr int kHHZetaSign = -1;

struct HHResult {
  TriSeries series;
  Window window;
  GenBasis basis = GenBasis::Elementary;
};

/// Overall q-power attached to Hochschild homology over Sym^lambda: q^{-2 L(lambda)}.
int hh_normalization(const Composition& lambda);

/// Koszul elements acting on a lambda-bimodule, in e-coordinates.
std::vector<Poly> hh_elements(const Composition& lambda, GenBasis basis);

/// Total Hochschild homology of a bimodule whose two alphabets are both blocked by top.
HHResult hh_bimodule(const MergeSplitBimodule& m, const Window& w,
                     GenBasis basis = GenBasis::Elementary);

/// Termwise Hochschild homology followed by homology of the induced differential. Even
/// parameters are unrolled up to `cap` (the complex's own cap when negative).
HHResult hh_complex(const CurvedComplex& c, const Composition& lambda, const Window& w, int cap = -1,
                    GenBasis basis = GenBasis::Elementary);

struct BraidStats {
  int epsilon = 0;
  int N = 0;
  int eta = 0;
};
BraidStats unknot_stats(int b);
/// Multiplies by (a t^{-1})^{(eps+N-eta)/2} q^{-eps}.
TriSeries kr_normalize(const TriSeries& s, const BraidStats& st);

/// M1 * M2: tensor over the shared alphabet, realized with a middle alphabet.
MergeSplitBimodule compose_bimodules(const MergeSplitBimodule& m1, const MergeSplitBimodule& m2);

struct TraceReport {
  bool pass = false;
  TriSeries lhs;
  TriSeries rhs;
  std::vector<Mismatch> mismatches;
};
TraceReport trace_check(const MergeSplitBimodule& m1, const MergeSplitBimodule& m2, const Window& w);

struct UnknotReport {
  Variant variant = Variant::Intrinsic;
  int k = 0;
  int cap = 0;
  Window window;
  TriSeries computed;
  TriSeries expected;
  bool match = false;
  std::vector<Mismatch> mismatches;
  /// For infinite variants with k >= 2: exponent s with computed = q^s expected, if any.
  std::optional<int> monomial_shift;
  std::string note;
};

/// Default window used by the tables: a in [0,k], q in [-2k, 2k+12], t in [0, tmax].
Window table_window(Variant v, int k, int cap);

UnknotReport unknot_invariant(Variant v, int k, int cap, const Window& w);

}  // namespace fraylab
