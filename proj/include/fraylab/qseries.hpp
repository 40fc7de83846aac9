#pragma once

#include <map>
#include <string>
#include <vector>

#include "fraylab/grading.hpp"
#include "fraylab/poly.hpp"
#include "fraylab/symfun.hpp"

namespace fraylab {

/// Finite Laurent polynomial in a, q, t.
class Laurent {
 public:
  using Terms = std::map<MultiDegree, Rational>;

  Laurent() = default;
  Laurent(const Rational& c);  // NOLINT: scalars promote
  Laurent(int c) : Laurent(Rational(c)) {}  // NOLINT
  static Laurent monomial(const MultiDegree& d, const Rational& c = 1);
  static Laurent q(int e, const Rational& c = 1) { return monomial({0, e, 0}, c); }

  const Terms& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(const MultiDegree& d) const;
  void add(const MultiDegree& d, const Rational& c);

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent operator-() const;
  friend Laurent operator+(Laurent x, const Laurent& y) { return x += y; }
  friend Laurent operator-(Laurent x, const Laurent& y) { return x -= y; }
  friend Laurent operator*(const Laurent& x, const Laurent& y);
  friend bool operator==(const Laurent& x, const Laurent& y) { return x.c_ == y.c_; }

  Laurent pow(int e) const;
  Laurent shifted(const MultiDegree& d) const;
  /// q -> q^{-1}
  Laurent bar() const;
  /// Exact quotient of q-only Laurent polynomials; throws if the division is not exact.
  Laurent divide_exact(const Laurent& d) const;
  bool q_only() const;

 private:
  Terms c_;
};

std::string to_string(const Laurent& l);

Laurent quantum_int(int j);
Laurent quantum_factorial(int n);
Laurent quantum_binomial(int j, int k);
Laurent f_factor(int n, const Composition& lambda);

struct Window {
  int amin = 0, amax = 0;
  int qmin = 0, qmax = 0;
  int tmin = 0, tmax = 0;

  bool contains(const MultiDegree& d) const;
  Window intersect(const Window& o) const;
  bool empty() const { return amin > amax || qmin > qmax || tmin > tmax; }
  bool operator==(const Window&) const = default;
};

std::string to_string(const Window& w);

struct Mismatch {
  MultiDegree degree;
  Rational got;
  Rational expected;
};

/// Truncated Laurent series with an explicit window.
class TriSeries {
 public:
  TriSeries() = default;
  explicit TriSeries(const Window& w) : w_(w) {}
  static TriSeries from_laurent(const Laurent& l, const Window& w);

  const Window& window() const { return w_; }
  const std::map<MultiDegree, Rational>& coeffs() const { return c_; }
  Rational coeff(const MultiDegree& d) const;
  /// Adds to the coefficient; degrees outside the window are dropped.
  void add(const MultiDegree& d, const Rational& c);

  TriSeries operator+(const TriSeries& o) const;
  TriSeries operator-(const TriSeries& o) const;
  /// Truncated product; exact only when no out-of-window terms would feed back.
  TriSeries operator*(const TriSeries& o) const;
  TriSeries times(const Laurent& l) const;
  /// Multiplies by a monomial; the window stays fixed.
  TriSeries shifted(const MultiDegree& d) const;
  TriSeries restricted(const Window& w) const;
  bool is_zero() const { return c_.empty(); }

  /// Coefficientwise comparison on the window intersection.
  std::vector<Mismatch> compare(const TriSeries& expected) const;
  bool equals_on_window(const TriSeries& o) const { return compare(o).empty(); }
  bool operator==(const TriSeries& o) const { return w_ == o.w_ && c_ == o.c_; }

 private:
  void require_same_window(const TriSeries& o) const;
  Window w_;
  std::map<MultiDegree, Rational> c_;
};

std::string to_string(const TriSeries& s);

/// Expansion direction: nonnegative powers of q, nonpositive powers of q, or
/// nonnegative powers of t.
enum class Direction { Q, QInv, T };

struct DenFactor {
  Laurent poly;
  Direction dir = Direction::Q;
};

struct RationalSeriesExpr {
  std::vector<Laurent> num;
  std::vector<DenFactor> den;

  static RationalSeriesExpr constant(const Laurent& l) { return {{l}, {}}; }
  RationalSeriesExpr operator*(const RationalSeriesExpr& o) const;
};

TriSeries expand_rational(const RationalSeriesExpr& e, const Window& w);

enum class Variant { Intrinsic, Finite, Infinite, DefIntrinsic, DefFinite, DefInfinite };

Variant parse_variant(const std::string& s);
std::string to_string(Variant v);

RationalSeriesExpr unknot_table(Variant v, int k);

struct Theorem1Entry {
  int k = 0;
  std::string relation;
  bool pass = false;
  std::vector<Mismatch> mismatches;
};

struct Theorem1Report {
  std::vector<Theorem1Entry> entries;
  bool pass() const;
};

/// Compares the closed forms: finite vs intrinsic times [k]! prod(1+tq^{-2j}),
/// def_finite vs intrinsic times [k]!, def_infinite vs def_intrinsic times [k]!.
Theorem1Report theorem1_check(const std::vector<int>& k_list, const Window& w);

}  // namespace fraylab
