#include <gtest/gtest.h>

#include "fraylab/ssbim.hpp"

using namespace fraylab;

namespace {

Poly e(int j, int k, int side = 0) { return Poly::sym(e_sym(j, k, side)); }

// Coefficients of prod 1/(1 - q^{2 d_i}) up to q^{2 max}, counted by brute force.
std::vector<int> free_dims(const std::vector<int>& degs, int max) {
  std::vector<int> out(static_cast<std::size_t>(max + 1));
  out[0] = 1;
  for (int d : degs)
    for (int m = d; m <= max; ++m) out[static_cast<std::size_t>(m)] += out[static_cast<std::size_t>(m - d)];
  return out;
}

}  // namespace

TEST(Ring, TruncatedPolynomialRing) {
  RingSpec r("Q[x]/x^2", {x_sym(1)}, {Poly::sym(x_sym(1), 2)}, RingSpec::Options{});
  EXPECT_EQ(r.graded_dim(0), 1);
  EXPECT_EQ(r.graded_dim(2), 1);
  EXPECT_EQ(r.graded_dim(4), 0);
  EXPECT_EQ(r.graded_dim(6), 0);
  EXPECT_TRUE(r.is_zero(Poly::sym(x_sym(1), 3)));
  EXPECT_FALSE(r.is_zero(Poly::sym(x_sym(1))));
}

TEST(Ring, FreeRingDimensions) {
  RingSpec r("free", {e_sym(1, 1), e_sym(1, 2), e_sym(1, 3)}, {}, RingSpec::Options{});
  auto want = free_dims({1, 2, 3}, 10);
  for (int m = 0; m <= 10; ++m) EXPECT_EQ(r.graded_dim(2 * m), want[static_cast<std::size_t>(m)]) << m;
}

TEST(Ring, IdentityBimoduleIsOneCopyOfSym) {
  for (int n = 1; n <= 3; ++n) {
    MergeSplitBimodule m = build_identity(Composition{n});
    std::vector<int> degs;
    for (int k = 1; k <= n; ++k) degs.push_back(k);
    auto want = free_dims(degs, 8);
    for (int d = 0; d <= 8; ++d) EXPECT_EQ(m.ring->graded_dim(2 * d), want[static_cast<std::size_t>(d)]);
    EXPECT_EQ(m.qshift, 0);
  }
}

TEST(Ring, NormalFormReducesRelations) {
  MergeSplitBimodule w = build_W(Composition{1, 1}, Composition{1, 1});
  Poly rel = e(1, 1) + e(2, 1) - e(1, 1, 1) - e(2, 1, 1);
  EXPECT_TRUE(w.ring->is_zero(rel));
  EXPECT_TRUE(w.ring->is_zero(e(1, 1) * e(2, 1) - e(1, 1, 1) * e(2, 1, 1)));
  EXPECT_FALSE(w.ring->is_zero(e(1, 1) - e(1, 1, 1)));
  // normal form is idempotent and linear
  Poly p = e(1, 1, 1).pow(3) + 2 * e(1, 1) * e(2, 1, 1);
  Poly nf = w.ring->normal_form(p);
  EXPECT_EQ(w.ring->normal_form(nf), nf);
  EXPECT_TRUE(w.ring->equal(p, nf));
}

TEST(Ring, ParametersRideAlong) {
  MergeSplitBimodule w = build_identity(Composition{2});
  Poly p = (e(1, 1) - e(1, 1, 1)) * Poly::sym(u_sym(1)) + Poly::sym(y_sym(1, 2));
  Poly nf = w.ring->normal_form(p);
  EXPECT_EQ(nf, Poly::sym(y_sym(1, 2)));
}

TEST(Ring, CoordinatesRoundTrip) {
  MergeSplitBimodule w = build_W(Composition{2, 1}, Composition{1, 2});
  for (int d = 0; d <= 6; d += 2) {
    const auto& basis = w.ring->standard_monomials(d);
    EXPECT_EQ(static_cast<int>(basis.size()), w.ring->graded_dim(d));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      SparseVec v = w.ring->coordinates(Poly::mono(basis[i]), d);
      EXPECT_EQ(v, (SparseVec{{static_cast<int>(i), 1}}));
      EXPECT_EQ(w.ring->from_coordinates(v, d), Poly::mono(basis[i]));
    }
  }
}

TEST(Ring, WrongRelationIsCaughtByLocus) {
  Layout l = Layout::balanced(Composition{1});
  RingSpec::Options o{l, {{1}}, 20, 3};
  RingSpec bad("bad", {e_sym(1, 1), e_sym(1, 1, 1)}, {e(1, 1) - 2 * e(1, 1, 1)}, o);
  EXPECT_THROW(bad.is_zero(e(1, 1) - 2 * e(1, 1, 1)), std::logic_error);
}

TEST(Ring, RejectsBadInput) {
  EXPECT_THROW(RingSpec("p", {u_sym(1)}, {}, RingSpec::Options{}), std::invalid_argument);
  EXPECT_THROW(RingSpec("h", {x_sym(1), x_sym(2)}, {Poly::sym(x_sym(1)) + Poly::sym(x_sym(2), 2)},
                        RingSpec::Options{}),
               std::invalid_argument);
}

TEST(Ring, MergeSplitRanks) {
  // W^{(1,1)}_{(1,1)} is free of rank [2] over the bottom ring
  EXPECT_EQ(rank_over_bottom(build_W(Composition{1, 1}, Composition{1, 1}), 12), quantum_int(2));
  EXPECT_EQ(rank_over_bottom(build_W(Composition::ones(3), Composition::ones(3)), 20), quantum_factorial(3));
  EXPECT_EQ(ell(Composition{3, 2}), 4);
  EXPECT_EQ(cross_ell(Composition{3, 2}), 6);
}
