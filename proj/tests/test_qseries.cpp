#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "fraylab/qseries.hpp"

using namespace fraylab;

namespace {

// Brute-force oracle for prod_{j=1..k} (1 + a q^{-2j}) / (1 - q^{2j}) on a window.
TriSeries intrinsic_oracle(int k, const Window& w) {
  TriSeries s(w);
  std::function<void(int, int, int)> rec = [&](int j, int a, int q) {
    if (j > k) {
      s.add({a, q, 0}, 1);
      return;
    }
    for (int eps = 0; eps <= 1; ++eps)
      for (int m = 0; q + 2 * j * m - 2 * j * eps <= w.qmax + 2 * k * (k + 1); ++m)
        rec(j + 1, a + eps, q + 2 * j * m - 2 * j * eps);
  };
  rec(1, 0, 0);
  return s;
}

}  // namespace

TEST(Quantum, Integers) {
  EXPECT_EQ(quantum_int(1), Laurent(1));
  EXPECT_EQ(quantum_int(2), Laurent::q(1) + Laurent::q(-1));
  EXPECT_EQ(quantum_int(3), Laurent::q(2) + Laurent(1) + Laurent::q(-2));
  EXPECT_EQ(quantum_factorial(3), quantum_int(2) * quantum_int(3));
}

TEST(Quantum, BinomialKnownValue) {
  // [4 choose 2] = q^4 + q^2 + 2 + q^-2 + q^-4
  Laurent want = Laurent::q(4) + Laurent::q(2) + Laurent(2) + Laurent::q(-2) + Laurent::q(-4);
  EXPECT_EQ(quantum_binomial(4, 2), want);
}

TEST(Quantum, BarInvarianceAndPositivity) {
  for (int n = 0; n <= 7; ++n)
    for (int k = 0; k <= n; ++k) {
      Laurent b = quantum_binomial(n, k);
      EXPECT_EQ(b.bar(), b);
      for (const auto& [d, c] : b.terms()) EXPECT_GT(c, 0);
      // q-Pascal: [n k] = q^{-k}[n-1 k] + q^{n-k}[n-1 k-1]
      if (n > 0 && k > 0 && k < n)
        EXPECT_EQ(b, quantum_binomial(n - 1, k).shifted({0, -k, 0}) + quantum_binomial(n - 1, k - 1).shifted({0, n - k, 0}));
    }
}

TEST(Quantum, FFactor) {
  EXPECT_EQ(f_factor(3, Composition{1, 1, 1}), quantum_factorial(3));
  EXPECT_EQ(f_factor(3, Composition{2, 1}), quantum_int(3));
  EXPECT_EQ(f_factor(4, Composition{2, 2}), quantum_binomial(4, 2));
  EXPECT_EQ(f_factor(2, Composition{2}), Laurent(1));
  EXPECT_THROW(f_factor(3, Composition{1, 1}), std::invalid_argument);
}

TEST(Laurent, DivideExact) {
  Laurent p = quantum_int(3) * quantum_int(2);
  EXPECT_EQ(p.divide_exact(quantum_int(2)), quantum_int(3));
  EXPECT_THROW(quantum_int(3).divide_exact(quantum_int(2)), std::domain_error);
}

TEST(Expand, GeometricSeries) {
  Window w{0, 0, 0, 10, 0, 0};
  TriSeries s = expand_rational({{Laurent(1)}, {{Laurent(1) - Laurent::q(2), Direction::Q}}}, w);
  for (int q = 0; q <= 10; ++q) EXPECT_EQ(s.coeff({0, q, 0}), q % 2 == 0 ? 1 : 0);
  TriSeries inv = expand_rational({{Laurent(1)}, {{Laurent(1) - Laurent::q(-2), Direction::QInv}}},
                                  Window{0, 0, -10, 0, 0, 0});
  for (int q = -10; q <= 0; ++q) EXPECT_EQ(inv.coeff({0, q, 0}), q % 2 == 0 ? 1 : 0);
}

TEST(Expand, TDirection) {
  Window w{0, 0, -20, 20, 0, 6};
  TriSeries s = expand_rational({{Laurent(1)}, {{Laurent(1) - Laurent::monomial({0, -2, 2}), Direction::T}}}, w);
  for (int m = 0; m <= 3; ++m) EXPECT_EQ(s.coeff({0, -2 * m, 2 * m}), 1);
  EXPECT_EQ(s.coeff({0, 0, 1}), 0);
}

TEST(Expand, ProductMatchesTruncatedProduct) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 3);
  Window w{0, 2, 0, 16, 0, 0};
  for (int it = 0; it < 20; ++it) {
    Laurent n1 = Laurent(1) + Laurent::monomial({e(rng) % 2, 2 * e(rng), 0}, c(rng));
    Laurent n2 = Laurent(c(rng) ? c(rng) : 1) + Laurent::q(2 * e(rng) + 2, c(rng));
    RationalSeriesExpr a{{n1}, {{Laurent(1) - Laurent::q(2 * (1 + e(rng))), Direction::Q}}};
    RationalSeriesExpr b{{n2}, {{Laurent(1) - Laurent::q(2 * (1 + e(rng))), Direction::Q}}};
    EXPECT_TRUE(expand_rational(a * b, w).equals_on_window(expand_rational(a, w) * expand_rational(b, w)));
  }
}

TEST(Expand, IntrinsicRowAgainstOracle) {
  for (int k = 1; k <= 3; ++k) {
    Window w{0, k, -2 * k, 2 * k + 12, 0, 0};
    TriSeries got = expand_rational(unknot_table(Variant::Intrinsic, k), w);
    EXPECT_TRUE(got.compare(intrinsic_oracle(k, w)).empty()) << k;
  }
}

TEST(Expand, IntrinsicK1Explicit) {
  Window w{0, 1, -2, 8, 0, 0};
  TriSeries got = expand_rational(unknot_table(Variant::Intrinsic, 1), w);
  for (int m = 0; m <= 4; ++m) {
    EXPECT_EQ(got.coeff({0, 2 * m, 0}), 1);
    EXPECT_EQ(got.coeff({1, 2 * m - 2, 0}), 1);
  }
  EXPECT_EQ(got.coeff({1, 8, 0}), 1);
  EXPECT_EQ(got.coeff({0, 3, 0}), 0);
}

TEST(Table, InfiniteK1SimplifiesToIntrinsic) {
  Window w{0, 1, -2, 14, 0, 6};
  EXPECT_TRUE(expand_rational(unknot_table(Variant::Infinite, 1), w)
                  .equals_on_window(expand_rational(unknot_table(Variant::Intrinsic, 1), w)));
}

TEST(Table, ClosedFormRelations) {
  Window w{0, 3, -6, 18, 0, 3};
  Theorem1Report r = theorem1_check({1, 2, 3}, w);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.entries.size(), 9u);
}

TEST(Series, WindowDiscipline) {
  Window w{0, 0, 0, 4, 0, 0};
  TriSeries s(w);
  s.add({0, 6, 0}, 1);
  EXPECT_TRUE(s.is_zero());
  s.add({0, 2, 0}, 3);
  EXPECT_EQ(s.shifted({0, 2, 0}).coeff({0, 4, 0}), 3);
  EXPECT_TRUE(s.shifted({0, 4, 0}).is_zero());
  TriSeries other(Window{0, 0, 0, 2, 0, 0});
  EXPECT_THROW(s + other, std::invalid_argument);
}

TEST(Series, CompareReportsDegrees) {
  Window w{0, 0, 0, 4, 0, 0};
  TriSeries x(w), y(w);
  x.add({0, 2, 0}, 1);
  y.add({0, 4, 0}, 2);
  auto m = x.compare(y);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].degree, (MultiDegree{0, 2, 0}));
  EXPECT_EQ(m[1].expected, 2);
}

TEST(Variants, ParseRoundTrip) {
  for (auto v : {Variant::Intrinsic, Variant::Finite, Variant::Infinite, Variant::DefIntrinsic,
                 Variant::DefFinite, Variant::DefInfinite})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("bogus"), std::invalid_argument);
}
