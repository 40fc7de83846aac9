#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fraylab/linalg.hpp"
#include "fraylab/poly.hpp"
#include "fraylab/symfun.hpp"

namespace fraylab {

/// Polynomial ring on positively graded generators modulo homogeneous relations.
/// Graded pieces are computed on demand by linear algebra and cached.
class RingSpec {
 public:
  struct Options {
    /// Alphabet layout used to evaluate generators at sample points.
    Layout layout;
    /// Blocks whose raw variables may be permuted among each other (see
    /// vanishing_locus_sampler). Empty disables the evaluation cross-check.
    std::vector<std::vector<int>> locus_groups;
    int samples = 100;
    std::uint64_t seed = 0;
  };

  RingSpec(std::string id, std::vector<Symbol> generators, std::vector<Poly> relations,
           Options opts);

  const std::string& id() const { return id_; }
  const std::vector<Symbol>& generators() const { return gens_; }
  const std::vector<Poly>& relations() const { return rels_; }
  const Layout& layout() const { return opts_.layout; }
  bool has_locus() const { return !opts_.locus_groups.empty(); }
  bool is_generator(const Symbol& s) const { return index_.count(s) > 0; }

  /// Dimension of the piece of internal q-degree d.
  int graded_dim(int d) const;
  const std::vector<Monomial>& standard_monomials(int d) const;

  /// Normal form; parameter and opaque factors are carried along as coefficients.
  Poly normal_form(const Poly& p) const;
  /// Coordinates of a homogeneous ring polynomial of q-degree d in the standard basis.
  SparseVec coordinates(const Poly& p, int d) const;
  Poly from_coordinates(const SparseVec& v, int d) const;

  /// Zero in the quotient. Confirms a zero normal form by exact evaluation at
  /// vanishing-locus points; a disagreement is a hard error.
  bool is_zero(const Poly& p) const;
  bool equal(const Poly& a, const Poly& b) const { return is_zero(a - b); }

 private:
  struct Piece {
    int degree = 0;
    std::vector<std::vector<int>> monomials;
    std::map<std::vector<int>, int> index;
    Echelon relations;
    std::vector<int> standard;        // monomial indices not used as pivots
    std::map<int, int> standard_pos;  // monomial index -> position in `standard`
    std::vector<Monomial> standard_monomials;
  };

  const Piece& piece(int d) const;
  std::unique_ptr<Piece> build_piece(int d) const;
  void enumerate(int d, std::vector<std::vector<int>>& out) const;
  std::vector<int> exponents(const Monomial& m) const;
  Monomial monomial(const std::vector<int>& e) const;
  SparseVec raw_coordinates(const Piece& pc, const Poly& p) const;
  bool vanishes_at_samples(const Poly& p) const;

  std::string id_;
  std::vector<Symbol> gens_;
  std::vector<int> weight_;
  std::vector<Poly> rels_;
  Options opts_;
  std::map<Symbol, int> index_;

  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<Piece>> pieces_;
  mutable std::vector<std::map<Symbol, Rational>> sample_values_;
  mutable bool samples_ready_ = false;
};

using RingPtr = std::shared_ptr<const RingSpec>;

/// Deterministic nonzero value for a parameter or opaque symbol at sample `i`.
Rational parameter_sample_value(const Symbol& s, int i);

}  // namespace fraylab
