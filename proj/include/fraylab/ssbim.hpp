#pragma once

#include <map>
#include <string>
#include <vector>

#include "fraylab/complex.hpp"
#include "fraylab/qseries.hpp"
#include "fraylab/ring.hpp"
#include "fraylab/symfun.hpp"

namespace fraylab {

/// A presented bimodule: a quotient ring whose left alphabet is blocked by `top` and whose
/// right alphabet is blocked by `bottom`. Composites also carry a middle alphabet.
struct MergeSplitBimodule {
  Composition top;
  Composition bottom;
  RingPtr ring;
  int qshift = 0;
  std::string label;
};

/// l(a) = sum a_i (a_i - 1) / 2
int ell(const Composition& a);
/// L(a) = sum_{i<j} a_i a_j
int cross_ell(const Composition& a);

/// W^top_bottom: Sym^top(X) (x) Sym^bottom(X') modulo e_i(X) - e_i(X'), with q-shift
/// l(bottom) - l(N). Rings are cached by (top, bottom).
MergeSplitBimodule build_W(const Composition& top, const Composition& bottom);
/// 1_lambda: blockwise identification e_k(X_j) = e_k(X'_j).
MergeSplitBimodule build_identity(const Composition& lambda);

/// Generators e_k(X_j) of one side of a composition.
std::vector<Symbol> block_generators(const Composition& b, int side);

Laurent digon_rank(int j, int k);
Laurent blamgon_rank(const Composition& lambda);
/// Windowed graded dimension of the ring of M times the inverse Poincare series of the bottom
/// ring, shifted by the q-shift of M.
Laurent rank_over_bottom(const MergeSplitBimodule& m, int qmax);

enum class ProjectorVariant { Finite, DefFinite, Infinite, DefInfinite };
std::string to_string(ProjectorVariant v);
ProjectorVariant parse_projector_variant(const std::string& s);

struct FrayedProjector {
  Composition lambda;
  ProjectorVariant variant = ProjectorVariant::Finite;
  CurvedComplex complex;
  int cap = -1;
  int qshift = 0;
};

/// Default family: thin recursion for (1^n), telescoping otherwise.
AFamily default_a_family(const Composition& lambda);

/// Koszul elements e_k(X_j) - e_k(X'_j), ordered by (j, k).
std::vector<std::pair<int, int>> koszul_index(const Composition& lambda);
Poly block_difference(int j, int k);
/// F_y = sum (e_k(X_j) - e_k(X'_j)) y_jk and F_u^{(n)} = sum_i (e_i(X) - e_i(X')) u_i.
Poly y_curvature(const Composition& lambda);
Poly u_curvature(const Composition& lambda);

FrayedProjector finite_projector(const Composition& lambda);
FrayedProjector deformed_finite_projector(const Composition& lambda, int cap = -1);
FrayedProjector infinite_projector(const Composition& lambda, int cap, const AFamily* a = nullptr);
FrayedProjector deformed_infinite_projector(const Composition& lambda, int cap,
                                            const AFamily* a = nullptr);
FrayedProjector make_projector(const Composition& lambda, ProjectorVariant v, int cap,
                               const AFamily* a = nullptr);

enum class CnVariant { Plain, Y, U, YU };
std::string to_string(CnVariant v);
CnVariant parse_cn_variant(const std::string& s);

/// Expected backward coefficient (tq^{n-2} W -> q^n W) of the two-term reduction.
Poly cn_backward(int n, CnVariant v);
Poly cn_curvature(int n, CnVariant v);

/// q^n W_(n,1) -> t q^{n-2} W_(n,1) -> t^2 q^{-2} 1_(n,1) with the variant's backward twist.
CurvedComplex cn_family(int n, CnVariant v);

struct ConeIotaResult {
  CurvedComplex reduced;
  bool matches = false;
  std::string detail;
};
/// Cone of the inclusion of t^2 q^{-2} 1_(n,1), with the identity entry eliminated.
ConeIotaResult cone_iota_eliminate(int n, CnVariant v);

struct LadderResult {
  /// Cone(Phi) after eliminating the rung and removing the unzip factors, on W_(n,1).
  CurvedComplex collapsed;
  /// (1^n)-fray Koszul data added: tw_{tau_n} on W_(1^{n+1}).
  CurvedComplex tau;
  bool matches = false;
  std::string detail;
};
LadderResult ladder_collapse(int n, int cap);

/// Connection of tw_{tau_n}: a^{(1^n)} extended by g_i in column n+1, built directly.
CurvedComplex tau_complex(int n, int cap);

struct BasisChangeReport {
  bool identity_ok = false;
  bool forward_ok = false;
  bool inverse_ok = false;
  bool round_trip_ok = false;
  std::vector<std::string> failures;
  bool pass() const { return identity_ok && forward_ok && inverse_ok && round_trip_ok; }
};
BasisChangeReport basis_change_check(int n, int cap = 2);

/// g_i and a^{(1^n)} rewritten in the block coordinates of (1^{n+1}).
Poly refine_to_thin(const Poly& p, int n);

struct RickardObject {
  MultiDegree degree;
  int web = 0;
};
struct RickardShape {
  int a = 0;
  int b = 0;
  bool positive = true;
  std::vector<RickardObject> objects;
};
RickardShape rickard_shape(int a, int b, bool positive);

/// Renames parameters (e.g. u_{jk} to u_{[j]k}) in every connection and curvature term.
CurvedComplex bundle_substitute(const CurvedComplex& c, const std::map<Symbol, Symbol>& orbit_map);

}  // namespace fraylab
