#pragma once

#include <map>
#include <vector>

#include "fraylab/poly.hpp"

namespace fraylab {

/// Sorted (index, nonzero value) pairs.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_from_map(const std::map<int, Rational>& m);
/// y + a x
SparseVec axpy(const SparseVec& y, const Rational& a, const SparseVec& x);

/// Rows in semi-echelon form: each row's smallest index is its pivot, pivot value 1,
/// pivots pairwise distinct.
class Echelon {
 public:
  /// Eliminates every pivot column from v.
  SparseVec reduce(const SparseVec& v) const;
  /// Same, also returning the coefficient of each tagged row that was subtracted.
  SparseVec reduce_tracked(const SparseVec& v, std::map<int, Rational>& coeffs) const;
  /// Adds v if it is independent of the current rows; returns whether it was added.
  bool insert(const SparseVec& v, int tag = -1);
  /// Inserts an already reduced nonzero vector.
  void insert_reduced(SparseVec v, int tag = -1);

  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int col) const { return pivot_.count(col) > 0; }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<int>& tags() const { return tags_; }

 private:
  std::vector<SparseVec> rows_;
  std::vector<int> tags_;
  std::map<int, int> pivot_;
};

int rank_of(const std::vector<SparseVec>& vectors);

struct KernelImage {
  std::vector<SparseVec> kernel;  // in source coordinates
  Echelon image;
};

/// columns[i] is the image of the i-th source basis vector.
KernelImage kernel_and_image(const std::vector<SparseVec>& columns);

/// Basis of cycles modulo boundaries with a projection onto it.
class HomologyBasis {
 public:
  HomologyBasis() = default;
  HomologyBasis(const std::vector<SparseVec>& boundaries, const std::vector<SparseVec>& cycles);

  int dim() const { return static_cast<int>(reps_.size()); }
  const std::vector<SparseVec>& representatives() const { return reps_; }
  /// Coordinates of the class of a cycle; throws if z is not in the cycle space.
  SparseVec coordinates(const SparseVec& z) const;

 private:
  Echelon combined_;
  std::vector<SparseVec> reps_;
};

}  // namespace fraylab
