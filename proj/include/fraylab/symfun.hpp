#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fraylab/poly.hpp"

namespace fraylab {

struct Composition {
  std::vector<int> parts;

  Composition() = default;
  Composition(std::initializer_list<int> p);
  explicit Composition(std::vector<int> p);

  int total() const;
  int size() const { return static_cast<int>(parts.size()); }
  int operator[](int j) const { return parts.at(static_cast<std::size_t>(j - 1)); }
  /// 1-based index of the first raw variable of block j.
  int offset(int j) const;
  /// Block containing raw variable r (1-based).
  int block_of(int r) const;

  /// Replaces part j by `sub`, which must sum to it.
  Composition refine(int j, const Composition& sub) const;
  Composition concat(int n) const;
  Composition concat(const Composition& o) const;
  static Composition ones(int n);
  static Composition parse(const std::string& s);

  auto operator<=>(const Composition&) const = default;
};

std::string to_string(const Composition& c);

/// All compositions of n.
std::vector<Composition> compositions_of(int n);

/// Which block composition each alphabet side uses.
struct Layout {
  Composition left;
  Composition right;
  Composition middle;

  static Layout balanced(const Composition& b) { return {b, b, {}}; }
  const Composition& side(int s) const;
};

struct Alphabet {
  std::string name;
  int group_index = 1;
  int size = 0;
  bool primed = false;
};

/// Raw e_k, h_k, p_k of a list of variables.
Poly raw_elementary(int k, const std::vector<Symbol>& vars);
Poly raw_complete(int k, const std::vector<Symbol>& vars);
Poly raw_power_sum(int k, const std::vector<Symbol>& vars);
std::vector<Symbol> raw_variables(const Composition& b, int j, int side);

/// e_i of the whole alphabet in block coordinates of b.
Poly elementary_of_total(int i, const Composition& b, int side = 0);
/// e_i of the union of blocks first..last of b.
Poly elementary_of_blocks(int i, const Composition& b, int first, int last, int side = 0);

/// Substitutes every E/P symbol by its raw-variable expansion.
Poly expand_to_x(const Poly& p, const Layout& layout);

/// p_k(X_j) in e-coordinates and e_k(X_j) in p-coordinates, for a block of the given size.
Poly power_sum_in_e(int k, int block, int side, int size);
Poly elementary_in_p(int k, int block, int side, int size);
/// h_m(X_j) in e-coordinates.
Poly complete_in_e(int m, int block, int side, int size);
/// Rewrites every P symbol (resp. E symbol) in the other basis.
Poly p_to_e(const Poly& p, const Layout& layout);
Poly e_to_p(const Poly& p, const Layout& layout);

/// Polynomials a_{ijk} with sum_{j,k} a_{ijk} (e_k(X_j) - e_k(X'_j)) = e_i(X) - e_i(X').
class AFamily {
 public:
  AFamily() = default;
  explicit AFamily(Composition b) : b_(std::move(b)) {}

  const Composition& composition() const { return b_; }
  const Poly& at(int i, int j, int k) const;
  void set(int i, int j, int k, Poly p);
  const std::map<std::array<int, 3>, Poly>& entries() const { return a_; }

  /// Left side of the defining identity for degree i.
  Poly identity_lhs(int i) const;
  /// True when the identity holds exactly after raw expansion, for every i.
  bool identity_holds() const;

 private:
  Composition b_;
  std::map<std::array<int, 3>, Poly> a_;
};

AFamily a_family(const Composition& b);
AFamily a_thin_recursive(int n);

/// g_1, ..., g_{n+1} in block coordinates of (n,1).
std::vector<Poly> g_polys(int n);

enum class DiffKind { E, H };
/// Coefficient of t^j in E(X,t)/E(X',t) or H(X,t)/H(X',t); X is block `block` on side 0,
/// X' the same block on side 1, with the given sizes.
Poly difference_symmetric(DiffKind kind, int j, int block, int size_left, int size_right);

/// dotted v_i as a polynomial in u_1..u_a (single block of size a).
Poly psi_change(int i, int a);
/// u_i as a polynomial in dotted v_1..v_a.
Poly rho_change(int i, int a);
/// F_u^{(a)} = sum_k (e_k(X) - e_k(X')) u_k and F_v^{(a)} = sum_k (1/k)(p_k(X) - p_k(X')) v_k.
Poly delta_e_curvature(int a, int block = 1);
Poly delta_p_curvature(int a, int block = 1);

/// Point on the vanishing locus of the total-alphabet differences.
struct VanishingPoint {
  std::vector<Rational> left;
  std::vector<Rational> right;
  std::vector<Rational> middle;
};

/// Distinct rational raw values; right values are a random permutation of the left ones.
std::vector<VanishingPoint> vanishing_locus_sampler(const Composition& b, int count,
                                                    std::uint64_t seed);

/// Grouped variant: the permutation only mixes raw variables of blocks within one group.
/// A middle alphabet, if present, is permuted as a whole and needs a single group.
std::vector<VanishingPoint> vanishing_locus_sampler(const Layout& layout,
                                                    const std::vector<std::vector<int>>& groups,
                                                    int count, std::uint64_t seed);

/// Values of E, P and X symbols at a point.
class PointEvaluator {
 public:
  PointEvaluator(const Layout& layout, const VanishingPoint& pt);
  /// nullopt for symbols that are not ring generators.
  std::optional<Rational> value(const Symbol& s) const;

 private:
  const Layout& layout_;
  const VanishingPoint& pt_;
  mutable std::map<Symbol, Rational> cache_;
};

/// Throws if `p` contains parameter or opaque symbols.
Rational evaluate_at(const Poly& p, const Layout& layout, const VanishingPoint& pt);

}  // namespace fraylab
