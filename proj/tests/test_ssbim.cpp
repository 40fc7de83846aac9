#include <gtest/gtest.h>

#include "fraylab/hochschild.hpp"
#include "fraylab/ssbim.hpp"

using namespace fraylab;

namespace {

Poly e(int j, int k, int side = 0) { return Poly::sym(e_sym(j, k, side)); }

}  // namespace

TEST(Bimodule, QShifts) {
  EXPECT_EQ(build_W(Composition{1, 1}, Composition{2}).qshift, 0);
  EXPECT_EQ(build_W(Composition{2}, Composition{1, 1}).qshift, -1);
  EXPECT_EQ(build_W(Composition{2, 1}, Composition{1, 1, 1}).qshift, -3);
  EXPECT_EQ(build_identity(Composition{2, 1}).qshift, 0);
}

TEST(Bimodule, RingsAreCached) {
  EXPECT_EQ(build_W(Composition{2, 1}, Composition{1, 2}).ring, build_W(Composition{2, 1}, Composition{1, 2}).ring);
  EXPECT_NE(build_W(Composition{2, 1}, Composition{1, 2}).ring, build_W(Composition{1, 2}, Composition{2, 1}).ring);
}

TEST(Bimodule, BlockGenerators) {
  auto g = block_generators(Composition{2, 1}, 1);
  EXPECT_EQ(g, (std::vector<Symbol>{e_sym(1, 1, 1), e_sym(1, 2, 1), e_sym(2, 1, 1)}));
}

TEST(Digon, RanksAreQuantumBinomials) {
  EXPECT_EQ(digon_rank(1, 1), quantum_int(2));
  EXPECT_EQ(digon_rank(2, 1), quantum_int(3));
  EXPECT_EQ(blamgon_rank(Composition{1, 1, 1}), quantum_factorial(3));
  for (int n = 1; n <= 3; ++n)
    for (const auto& l : compositions_of(n)) {
      Composition full{n};
      MergeSplitBimodule m = compose_bimodules(build_W(full, l), build_W(l, full));
      EXPECT_EQ(rank_over_bottom(m, 2 * cross_ell(l) + 4), blamgon_rank(l)) << to_string(l);
    }
}

TEST(Projector, KoszulIndexAndCurvatures) {
  EXPECT_EQ(koszul_index(Composition{2, 1}), (std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}));
  EXPECT_EQ(block_difference(2, 1), e(2, 1) - e(2, 1, 1));
  Poly fy = y_curvature(Composition{1});
  EXPECT_EQ(fy, (e(1, 1) - e(1, 1, 1)) * Poly::sym(y_sym(1, 1)));
}

TEST(Projector, FiniteIsKoszulOnW) {
  FrayedProjector p = finite_projector(Composition{2});
  EXPECT_EQ(p.complex.size(), 4);
  EXPECT_TRUE(p.complex.curvature().is_zero());
  EXPECT_TRUE(p.complex.params().empty());
  FrayedProjector q = finite_projector(Composition{1, 2});
  EXPECT_EQ(q.complex.size(), 8);
}

TEST(Projector, DeformedCurvatures) {
  Composition l{1, 1};
  FrayedProjector y = deformed_finite_projector(l, 2);
  EXPECT_EQ(y.complex.curvature(), y_curvature(l));
  FrayedProjector u = infinite_projector(l, 2);
  EXPECT_EQ(u.complex.curvature(), -u_curvature(l));
  FrayedProjector yu = deformed_infinite_projector(l, 2);
  EXPECT_EQ(yu.complex.curvature(), y_curvature(l) - u_curvature(l));
  EXPECT_THROW(infinite_projector(l, -1), std::invalid_argument);
}

TEST(Projector, MaurerCartanSmall) {
  for (int n = 1; n <= 2; ++n)
    for (const auto& l : compositions_of(n))
      for (auto v : {ProjectorVariant::Finite, ProjectorVariant::DefFinite, ProjectorVariant::Infinite,
                     ProjectorVariant::DefInfinite}) {
        FrayedProjector p = make_projector(l, v, 2);
        EXPECT_TRUE(mc_check(p.complex.data()).pass) << to_string(l) << " " << to_string(v);
      }
}

TEST(Projector, WrongFamilyBreaksMaurerCartan) {
  Composition l{1, 1};
  // dropping a_{121} leaves x_2 - x'_2 in D^2, which is nonzero in W
  AFamily good = a_thin_recursive(2);
  AFamily bad(l);
  for (const auto& [key, p] : good.entries())
    if (key != std::array<int, 3>{1, 2, 1}) bad.set(key[0], key[1], key[2], p);
  EXPECT_THROW(infinite_projector(l, 2, &bad), McError);
}

TEST(Projector, VariantNames) {
  for (auto v : {ProjectorVariant::Finite, ProjectorVariant::DefFinite, ProjectorVariant::Infinite,
                 ProjectorVariant::DefInfinite})
    EXPECT_EQ(parse_projector_variant(to_string(v)), v);
  EXPECT_THROW(parse_projector_variant("intrinsic"), std::invalid_argument);
}

TEST(Cn, FamilyShapes) {
  for (int n = 1; n <= 3; ++n)
    for (auto v : {CnVariant::Plain, CnVariant::Y, CnVariant::U, CnVariant::YU}) {
      CurvedComplex c = cn_family(n, v);
      EXPECT_EQ(c.size(), 3);
      EXPECT_EQ(c.curvature(), cn_curvature(n, v));
      EXPECT_EQ(parse_cn_variant(to_string(v)), v);
    }
  EXPECT_EQ(cn_backward(2, CnVariant::Plain), Poly());
  EXPECT_TRUE(cn_curvature(2, CnVariant::Plain).is_zero());
}

TEST(Cn, ConeOfInclusionCollapses) {
  for (int n = 1; n <= 2; ++n)
    for (auto v : {CnVariant::Plain, CnVariant::Y, CnVariant::U, CnVariant::YU}) {
      ConeIotaResult r = cone_iota_eliminate(n, v);
      EXPECT_TRUE(r.matches) << n << " " << to_string(v) << ": " << r.detail;
      EXPECT_EQ(r.reduced.size(), 2);
    }
}

TEST(Ladder, CollapseMatchesTau) {
  for (int n = 1; n <= 2; ++n) {
    LadderResult r = ladder_collapse(n, 2);
    EXPECT_TRUE(r.matches) << n << ": " << r.detail;
  }
}

TEST(Ladder, BasisChange) {
  for (int n = 1; n <= 3; ++n) {
    BasisChangeReport r = basis_change_check(n, 2);
    EXPECT_TRUE(r.pass()) << n;
    for (const auto& f : r.failures) ADD_FAILURE() << f;
  }
}

TEST(Ladder, RefineToThinOfG1) {
  EXPECT_EQ(refine_to_thin(Poly(1), 2), Poly(1));
  EXPECT_EQ(refine_to_thin(e(1, 1), 2), e(1, 1) + e(2, 1));
}

TEST(Rickard, ChainShape) {
  RickardShape r = rickard_shape(2, 1, true);
  ASSERT_EQ(r.objects.size(), 2u);
  EXPECT_EQ(r.objects[1].degree, (MultiDegree{0, -1, 1}));
  RickardShape n = rickard_shape(2, 3, false);
  ASSERT_EQ(n.objects.size(), 3u);
  EXPECT_EQ(n.objects[2].degree, (MultiDegree{0, 2, -2}));
}

TEST(Bundle, RenamesKeepMaurerCartan) {
  FrayedProjector p = infinite_projector(Composition{1, 1}, 2);
  std::map<Symbol, Symbol> orbit = {{u_sym(1), u_sym(1, 1)}, {u_sym(2), u_sym(2, 1)}};
  CurvedComplex b = bundle_substitute(p.complex, orbit);
  EXPECT_TRUE(mc_check(b.data()).pass);
  EXPECT_EQ(b.params(), (std::vector<Symbol>{u_sym(1, 1), u_sym(2, 1)}));
  EXPECT_THROW(bundle_substitute(p.complex, {{u_sym(1), u_sym(2, 1)}}), std::invalid_argument);
}
