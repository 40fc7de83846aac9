#include <gtest/gtest.h>

#include <random>

#include "fraylab/complex.hpp"
#include "fraylab/suites.hpp"

using namespace fraylab;

namespace {

RingPtr poly_ring(int vars) {
  std::vector<Symbol> g;
  for (int i = 1; i <= vars; ++i) g.push_back(x_sym(i));
  return std::make_shared<RingSpec>("Q[x" + std::to_string(vars) + "]", g, std::vector<Poly>{},
                                    RingSpec::Options{});
}

Poly x(int i) { return Poly::sym(x_sym(i)); }

CurvedComplex single(const RingPtr& r, MultiDegree shift = {}) {
  ComplexData d;
  d.objects.push_back({shift, 0, r, "R"});
  return CurvedComplex(d);
}

Rational total(const TriSeries& s) {
  Rational t = 0;
  for (const auto& [d, c] : s.coeffs()) t += c;
  return t;
}

const Window kWin{0, 0, -10, 16, -4, 4};

}  // namespace

TEST(Koszul, QuotientByOneElement) {
  RingPtr r = poly_ring(1);
  TriSeries h = homology_truncated(koszul_build(r, {x(1)}), kWin);
  // the cokernel sits on the theta summand
  EXPECT_EQ(h.coeff({0, -2, 1}), 1);
  EXPECT_EQ(total(h), 1);
  TriSeries h2 = homology_truncated(koszul_build(r, {x(1).pow(2)}), kWin);
  EXPECT_EQ(h2.coeff({0, -4, 1}), 1);
  EXPECT_EQ(h2.coeff({0, -2, 1}), 1);
  EXPECT_EQ(total(h2), 2);
}

TEST(Koszul, RegularSequenceInTwoVariables) {
  RingPtr r = poly_ring(2);
  TriSeries h = homology_truncated(koszul_build(r, {x(1).pow(2), x(2)}), kWin);
  EXPECT_EQ(total(h), 2);
  EXPECT_EQ(h.coeff({0, -6, 2}), 1);
  EXPECT_EQ(h.coeff({0, -4, 2}), 1);
}

TEST(Koszul, NonRegularSequenceHasHigherHomology) {
  RingPtr r = poly_ring(1);
  TriSeries h = homology_truncated(koszul_build(r, {x(1), x(1)}), kWin);
  EXPECT_EQ(total(h), 2);
  Rational odd = 0;
  for (const auto& [d, c] : h.coeffs())
    if (d.t == 1) odd += c;
  EXPECT_EQ(odd, 1);
}

TEST(Koszul, ThreeElementsSquareToZero) {
  RingPtr r = poly_ring(2);
  CurvedComplex k = koszul_build(r, {x(1), x(2), x(1) + x(2)});
  EXPECT_EQ(k.size(), 8);
  EXPECT_TRUE(mc_check(k.data()).pass);
}

TEST(MaurerCartan, FailureIsReported) {
  RingPtr r = poly_ring(1);
  ComplexData d;
  for (int i = 0; i < 3; ++i) d.objects.push_back({{0, -2 * i, i}, 0, r, "R"});
  d.conn[{1, 0}] = x(1);
  d.conn[{2, 1}] = x(1);
  McResult res = mc_check(d);
  EXPECT_FALSE(res.pass);
  EXPECT_EQ(res.row, 2);
  EXPECT_EQ(res.col, 0);
  EXPECT_THROW(CurvedComplex{d}, McError);
}

TEST(MaurerCartan, InhomogeneousEntryIsRejected) {
  RingPtr r = poly_ring(1);
  ComplexData d;
  d.objects.push_back({{}, 0, r, "R"});
  d.objects.push_back({{0, -2, 1}, 0, r, "R"});
  d.conn[{1, 0}] = x(1) + x(1).pow(2);
  EXPECT_THROW(check_homogeneous(d), std::invalid_argument);
}

TEST(Shift, InvolutionAndSign) {
  RingPtr r = poly_ring(1);
  CurvedComplex k = koszul_build(r, {x(1)});
  ShiftSpec s{{1, 4, 1}}, inv{{-1, -4, -1}};
  CurvedComplex back = shift_complex(shift_complex(k, s), inv);
  EXPECT_EQ(back.connection(), k.connection());
  ShiftSpec t{{0, 0, 1}};
  EXPECT_EQ(shift_complex(k, t).entry(1, 0), -x(1));
  ShiftSpec at{{1, 0, 1}};
  EXPECT_EQ(shift_complex(k, at).entry(1, 0), x(1));
}

TEST(Cone, IdentityConeIsContractible) {
  RingPtr r = poly_ring(2);
  CurvedComplex k = koszul_build(r, {x(1), x(2)});
  CurvedComplex c = cone(identity_matrix(k.size()), k, k);
  EXPECT_EQ(c.size(), 8);
  EXPECT_TRUE(homology_truncated(c, kWin).is_zero());
}

TEST(Cone, RejectsNonClosedMap) {
  RingPtr r = poly_ring(1);
  CurvedComplex k = koszul_build(r, {x(1)});
  Matrix f;
  f[{0, 0}] = 1;
  EXPECT_THROW(cone(f, k, k), std::invalid_argument);
}

TEST(Gauss, EliminatingIdentityLeavesNothing) {
  RingPtr r = poly_ring(1);
  CurvedComplex p = single(r);
  CurvedComplex c = cone(identity_matrix(1), p, p);
  Elimination e = gaussian_eliminate(c, 1, 0);
  EXPECT_EQ(e.reduced.size(), 0);
  EXPECT_TRUE(verify_sdr(c, e.reduced, e.sdr).pass);
}

TEST(Gauss, RejectsNonScalarPivot) {
  RingPtr r = poly_ring(1);
  CurvedComplex k = koszul_build(r, {x(1)});
  EXPECT_THROW(gaussian_eliminate(k, 1, 0), std::invalid_argument);
}

TEST(Gauss, ZigZagKeepsOuterObjects) {
  // A --x--> B --1--> C: eliminating B -> C leaves A alone
  RingPtr r = poly_ring(1);
  ComplexData d;
  d.objects.push_back({{0, 0, 0}, 0, r, "A"});
  d.objects.push_back({{0, -2, 1}, 0, r, "B"});
  d.objects.push_back({{0, -2, 2}, 0, r, "C"});
  d.conn[{2, 1}] = 1;
  CurvedComplex c(d);
  Elimination e = gaussian_eliminate(c, 2, 1);
  EXPECT_EQ(e.kept, (std::vector<int>{0}));
  EXPECT_TRUE(verify_sdr(c, e.reduced, e.sdr).pass);
}

TEST(Gauss, RandomComplexesKeepHomology) {
  Window w{0, 0, -8, 16, -4, 6};
  int eliminated = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CurvedComplex c = random_complex(seed);
    TriSeries before = homology_truncated(c, w);
    for (int step = 0; step < 3; ++step) {
      bool found = false;
      for (const auto& [key, p] : c.connection()) {
        if (!p.is_constant() || p.is_zero()) continue;
        Elimination e = gaussian_eliminate(c, key.first, key.second);
        ASSERT_TRUE(verify_sdr(c, e.reduced, e.sdr).pass) << seed;
        ASSERT_EQ(e.reduced.size(), c.size() - 2);
        c = e.reduced;
        found = true;
        ++eliminated;
        break;
      }
      if (!found) break;
    }
    EXPECT_TRUE(homology_truncated(c, w).compare(before).empty()) << seed;
  }
  EXPECT_GE(eliminated, 50);
}

TEST(Deformation, KoszulHomotopyGivesCurvature) {
  RingPtr r = poly_ring(1);
  CurvedComplex k = koszul_build(r, {x(1)});
  Matrix xi;
  xi[{0, 1}] = 1;
  CurvedComplex def = strict_deformation(k, {xi}, {x(1)}, {u_sym(1)}, 3);
  EXPECT_EQ(def.curvature(), x(1) * Poly::sym(u_sym(1)));
  EXPECT_TRUE(mc_check(def.data()).pass);
  EXPECT_THROW(strict_deformation(k, {xi}, {2 * x(1)}, {u_sym(1)}, 3), DeformationError);
}

TEST(Deformation, CurvedComplexCannotBeUnrolled) {
  RingPtr r = poly_ring(1);
  CurvedComplex k = koszul_build(r, {x(1)});
  Matrix xi;
  xi[{0, 1}] = 1;
  CurvedComplex def = strict_deformation(k, {xi}, {x(1)}, {u_sym(1)}, 2);
  EXPECT_THROW(unroll(def, 2), std::invalid_argument);
  ComplexData raw = unroll_data(def, 2);
  EXPECT_EQ(raw.objects.size(), 6u);
}

TEST(Transport, NilpotentExponentialIsInvertible) {
  RingPtr r = poly_ring(1);
  CurvedComplex k = koszul_build(r, {x(1)});
  Matrix h;
  h[{0, 1}] = 1;
  Transport t = transport_twist(k, h, u_sym(1), 2);
  EXPECT_TRUE(matrix_equal(compose(t.psi, t.psi_inv), identity_matrix(2), k.objects()));
  Matrix full;
  full[{0, 1}] = 1;
  full[{1, 0}] = x(1);
  EXPECT_THROW(transport_twist(k, full, u_sym(1), 3), std::invalid_argument);
}

TEST(Exterior, RelationsHold) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(exterior_relations_hold(n)) << n;
}

TEST(Signs, MiddleInterchange) {
  // (f (x) g)(f' (x) g') = (-1)^{|g||f'|} ff' (x) gg' on Z/2-graded spaces, checked on
  // explicit 2x2 odd and even matrices with a Koszul-signed tensor product.
  using M = std::array<std::array<int, 2>, 2>;  // basis: even e0, odd e1
  M odd{{{0, 1}, {1, 0}}}, even{{{1, 0}, {0, 2}}};
  auto mul = [](const M& a, const M& b) {
    M c{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  // (f (x) g)(v (x) w) = (-1)^{|g||v|} f v (x) g w, as a 4x4 matrix
  auto tensor = [](const M& f, int df, const M& g, int dg) {
    (void)df;
    std::array<std::array<int, 4>, 4> t{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            int sign = (dg * j) % 2 ? -1 : 1;
            t[2 * i + k][2 * j + l] = sign * f[i][j] * g[k][l];
          }
    return t;
  };
  auto mul4 = [](const auto& a, const auto& b) {
    std::array<std::array<int, 4>, 4> c{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  struct G {
    M m;
    int d;
  };
  std::vector<G> maps = {{odd, 1}, {even, 0}};
  for (const auto& f : maps)
    for (const auto& g : maps)
      for (const auto& f2 : maps)
        for (const auto& g2 : maps) {
          auto lhs = mul4(tensor(f.m, f.d, g.m, g.d), tensor(f2.m, f2.d, g2.m, g2.d));
          auto rhs = tensor(mul(f.m, f2.m), (f.d + f2.d) % 2, mul(g.m, g2.m), (g.d + g2.d) % 2);
          int s = commutator_sign({0, 0, g.d}, {0, 0, f2.d});
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) EXPECT_EQ(lhs[i][j], s * rhs[i][j]);
        }
}

TEST(Substitute, RenamesParameters) {
  RingPtr r = poly_ring(1);
  CurvedComplex k = koszul_build(r, {x(1)});
  Matrix xi;
  xi[{0, 1}] = 1;
  CurvedComplex def = strict_deformation(k, {xi}, {x(1)}, {u_sym(1)}, 2);
  CurvedComplex ren = substitute_parameters(def, {{u_sym(1), Poly::sym(u_sym(1, 1))}}, {u_sym(1, 1)});
  EXPECT_EQ(ren.curvature(), x(1) * Poly::sym(u_sym(1, 1)));
  EXPECT_EQ(ren.params(), (std::vector<Symbol>{u_sym(1, 1)}));
}
