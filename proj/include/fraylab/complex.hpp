#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fraylab/grading.hpp"
#include "fraylab/poly.hpp"
#include "fraylab/qseries.hpp"
#include "fraylab/ring.hpp"

namespace fraylab {

/// Rank-one free summand: shift times the ring, with the bimodule's own q-shift kept apart.
struct ComplexObject {
  MultiDegree shift;
  int qshift = 0;
  RingPtr ring;
  std::string label;

  MultiDegree degree() const { return shift + MultiDegree{0, qshift, 0}; }
};

/// Sparse matrix keyed by (target row, source column).
using Matrix = std::map<std::pair<int, int>, Poly>;

/// Even parameters stay symbolic; odd ones are always unrolled into objects.
struct DeformationAlphabet {
  std::vector<Symbol> even;
  std::vector<MultiDegree> odd;
};

struct McResult {
  bool pass = true;
  std::string message;
  Monomial parameter;
  int row = -1;
  int col = -1;
};

class McError : public std::runtime_error {
 public:
  explicit McError(const McResult& r) : std::runtime_error(r.message), result(r) {}
  McResult result;
};

/// Raw complex data; CurvedComplex wraps a validated instance.
struct ComplexData {
  std::vector<ComplexObject> objects;
  Matrix conn;
  /// Central element: ring coefficients times even parameters.
  Poly curvature;
  std::vector<Symbol> params;
  /// Maximal total parameter degree kept; negative means unbounded.
  int cap = -1;
};

McResult mc_check(const ComplexData& d);

class CurvedComplex {
 public:
  CurvedComplex() = default;
  /// Validates homogeneity and the Maurer-Cartan equation; throws on failure.
  explicit CurvedComplex(ComplexData d);

  const ComplexData& data() const { return d_; }
  const std::vector<ComplexObject>& objects() const { return d_.objects; }
  const Matrix& connection() const { return d_.conn; }
  const Poly& curvature() const { return d_.curvature; }
  const std::vector<Symbol>& params() const { return d_.params; }
  int cap() const { return d_.cap; }
  int size() const { return static_cast<int>(d_.objects.size()); }
  Poly entry(int row, int col) const;

  /// Connection split by parameter monomial.
  std::map<Monomial, Matrix> by_parameter() const;
  /// Curvature as (ring coefficient, parameter monomial) pairs.
  std::vector<std::pair<Poly, Monomial>> curvature_terms() const;

 private:
  ComplexData d_;
};

/// Throws if some connection term is not of total degree t.
void check_homogeneous(const ComplexData& d);
/// Drops parameter monomials above the cap.
Poly truncate_cap(const Poly& p, int cap);

Matrix identity_matrix(int n);
Matrix compose(const Matrix& a, const Matrix& b, int cap = -1);
Matrix add(const Matrix& a, const Matrix& b, const Rational& s = 1);
Matrix scale(const Matrix& a, const Rational& s);
/// Entrywise equality in the rings of the target objects.
bool matrix_equal(const Matrix& a, const Matrix& b, const std::vector<ComplexObject>& targets,
                  int cap = -1);
/// [D_tgt, f] = D_tgt f - (-1)^{parity(t, deg f)} f D_src
Matrix commutator_with_connection(const CurvedComplex& tgt, const Matrix& f,
                                  const MultiDegree& deg_f, const CurvedComplex& src);

CurvedComplex shift_complex(const CurvedComplex& c, const ShiftSpec& s);
ComplexData shift_data(const ComplexData& c, const ShiftSpec& s);
CurvedComplex direct_sum(const CurvedComplex& x, const CurvedComplex& y);

/// Adds alpha to the connection and extra_curvature to the curvature.
CurvedComplex twist(const CurvedComplex& c, const Matrix& alpha, const Poly& extra_curvature = Poly());

/// tw_f(t^{-1} X + Y); objects of X come first.
CurvedComplex cone(const Matrix& f, const CurvedComplex& x, const CurvedComplex& y);

struct SdrData {
  Matrix f;  // big -> small
  Matrix g;  // small -> big
  Matrix h;  // big -> big, degree t^{-1}
};

struct SdrCheck {
  bool pass = true;
  std::string failure;
};

/// Checks fg = 1, [d,h] = 1 - gf, h^2 = fh = hg = 0 and that f, g are closed.
SdrCheck verify_sdr(const CurvedComplex& big, const CurvedComplex& small, const SdrData& s);

struct Elimination {
  CurvedComplex reduced;
  SdrData sdr;
  /// reduced object index -> original index
  std::vector<int> kept;
};

/// Removes the invertible entry (row <- col). Throws if it is not a nonzero scalar.
Elimination gaussian_eliminate(const CurvedComplex& c, int row, int col);

/// One odd parameter: forward coefficients multiply theta, backward ones its dual.
struct OddTwist {
  MultiDegree theta_degree;
  Matrix forward;
  Matrix backward;
};

/// Unrolled tw(sum forward_i theta_i + backward_i theta_i^dual) of base (x) exterior algebra.
/// Object (S, b) has index S * base_size + b with S a bitmask; the exterior factor sits on
/// the left of the base factor.
ComplexData exterior_twist(const ComplexData& base, const std::vector<OddTwist>& twists);

/// Koszul complex of `elements` over `ring`: tw(sum xi_i theta_i)(R (x) Lambda), unrolled.
CurvedComplex koszul_build(const RingPtr& ring, const std::vector<Poly>& elements, int qshift = 0);

struct DeformationFailure {
  int index = -1;
  int other = -1;
  std::string condition;
};

class DeformationError : public std::runtime_error {
 public:
  explicit DeformationError(const DeformationFailure& f);
  DeformationFailure failure;
};

/// tw(sum xi_i u_i)(C (x) R[u]) with curvature increased by sum phi_i u_i, without checks.
ComplexData strict_deformation_data(const CurvedComplex& c, const std::vector<Matrix>& xi,
                                    const std::vector<Poly>& phi, const std::vector<Symbol>& params,
                                    int cap = -1);
/// Checks [d, xi_i] = phi_i and that the xi graded-commute, then builds the deformation.
CurvedComplex strict_deformation(const CurvedComplex& c, const std::vector<Matrix>& xi,
                                 const std::vector<Poly>& phi, const std::vector<Symbol>& params,
                                 int cap = -1);

struct Transport {
  Matrix psi;
  Matrix psi_inv;
};

/// Psi = sum_k h^k u^k / k!; requires h^(nilpotency) = 0.
Transport transport_twist(const CurvedComplex& c, const Matrix& h, const Symbol& u, int nilpotency);
/// Psi D Psi^{-1} as a new complex (MC-checked).
CurvedComplex conjugate(const CurvedComplex& c, const Transport& t, const Poly& curvature);

struct TwistedIso {
  CurvedComplex source;
  CurvedComplex target;
};

/// Given mutually inverse closed f: X -> Y, g: Y -> X and an MC element alpha on X,
/// returns tw_alpha(X) and tw_{f alpha g}(Y) and checks that f, g stay closed.
TwistedIso hpt_conjugate(const CurvedComplex& x, const CurvedComplex& y, const Matrix& f,
                         const Matrix& g, const Matrix& alpha, const Poly& extra_curvature = Poly());

/// Applies an algebra map on parameters to every connection and curvature term.
CurvedComplex substitute_parameters(const CurvedComplex& c, const std::map<Symbol, Poly>& sub,
                                    const std::vector<Symbol>& new_params);

struct SdrLift {
  std::vector<Matrix> xi_big;
  CurvedComplex big_deformed;
  CurvedComplex small_deformed;
};

/// Lifts a deforming family along an SDR and checks all lifted identities.
SdrLift sdr_lift(const CurvedComplex& big, const CurvedComplex& small, const SdrData& sdr,
                 const std::vector<Matrix>& xi, const std::vector<Poly>& phi,
                 const std::vector<Symbol>& params);

/// Even parameters turned into object multiplicities, up to the cap.
CurvedComplex unroll(const CurvedComplex& c, int cap);
/// Same objects and entries without requiring vanishing curvature; the result is not
/// MC-checked and its curvature field is left empty.
ComplexData unroll_data(const CurvedComplex& c, int cap);

/// Graded dimensions of homology; needs vanishing curvature and no opaque entries.
TriSeries homology_truncated(const CurvedComplex& c, const Window& w);

/// theta, dual theta relations for n odd generators acting on the exterior algebra.
bool exterior_relations_hold(int n);

}  // namespace fraylab
