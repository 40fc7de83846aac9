#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraylab/grading.hpp"

namespace fraylab {

using Rational = mpq_class;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

/// Generator kinds. E and P are block symmetric functions, X raw variables, U/Y/V even
/// deformation parameters, Opaque a formal bimodule map with a stored degree.
enum class SymKind : std::uint8_t { E, P, X, U, Y, V, Opaque };

/// side: 0 for the left alphabet X, 1 for the right alphabet X', 2 for a middle alphabet
/// that only appears inside composed rings.
struct Symbol {
  SymKind kind = SymKind::E;
  int block = 0;
  int k = 0;
  int side = 0;
  MultiDegree deg;

  auto operator<=>(const Symbol&) const = default;

  bool is_parameter() const {
    return kind == SymKind::U || kind == SymKind::Y || kind == SymKind::V;
  }
  bool is_opaque() const { return kind == SymKind::Opaque; }
  bool is_ring() const { return !is_parameter() && !is_opaque(); }
  bool primed() const { return side == 1; }
};

Symbol e_sym(int block, int k, int side = 0);
Symbol p_sym(int block, int k, int side = 0);
Symbol x_sym(int index, int side = 0);
/// u_i, optionally tagged with a bundle index; degree q^{-2i} t^2.
Symbol u_sym(int i, int bundle = 0);
/// y_{jk}: degree q^{-2k} t^2.
Symbol y_sym(int block, int k);
/// dotted v_k: degree q^{-2k} t^2.
Symbol v_sym(int k, int bundle = 0);
Symbol opaque_sym(int id, MultiDegree deg);
inline constexpr int kUnzipId = 0;
Symbol unzip_sym();
/// Formal inclusion 1 -> W paired with unzip in ladder cones.
inline constexpr int kZipId = 1;
Symbol zip_sym();

std::string to_string(const Symbol& s);

/// Sorted list of (symbol, positive exponent).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Symbol& s, int power = 1);

  const std::vector<std::pair<Symbol, int>>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int total_degree() const;
  int power_of(const Symbol& s) const;
  MultiDegree degree() const;

  Monomial operator*(const Monomial& o) const;
  /// Splits into (ring part, parameter-and-opaque part).
  std::pair<Monomial, Monomial> split() const;

  static Monomial from_factors(std::vector<std::pair<Symbol, int>> f);

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<std::pair<Symbol, int>> f_;
};

std::string to_string(const Monomial& m);

/// Sparse polynomial with exact rational coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT: scalars promote
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT
  static Poly sym(const Symbol& s, int power = 1);
  static Poly mono(const Monomial& m, const Rational& c = 1);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coeff(const Monomial& m) const;
  std::size_t size() const { return t_.size(); }

  /// Common degree of all terms; nullopt for zero or inhomogeneous polynomials.
  std::optional<MultiDegree> degree() const;
  bool is_homogeneous() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(Poly a, int c) { return a *= Rational(c); }
  friend Poly operator*(int c, Poly a) { return a *= Rational(c); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

  Poly pow(int e) const;
  void add_term(const Monomial& m, const Rational& c);

  /// Replaces symbols for which `f` returns a value; other symbols are kept.
  Poly substitute(const std::function<std::optional<Poly>(const Symbol&)>& f) const;
  Poly substitute(const std::map<Symbol, Poly>& m) const;
  Rational evaluate(const std::function<Rational(const Symbol&)>& f) const;

  /// Groups terms by their parameter-and-opaque monomial; values are the ring parts.
  std::map<Monomial, Poly> by_parameter() const;
  /// Inverse of by_parameter.
  static Poly from_parameter_parts(const std::map<Monomial, Poly>& parts);

  /// Keeps terms whose monomial satisfies `keep`.
  Poly filter(const std::function<bool(const Monomial&)>& keep) const;
  bool any_symbol(const std::function<bool(const Symbol&)>& pred) const;
  /// Highest total power of parameter symbols over all terms.
  int parameter_degree() const;

 private:
  Terms t_;
};

using SymPoly = Poly;

std::string to_string(const Poly& p);

}  // namespace fraylab
