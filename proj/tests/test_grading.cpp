#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "fraylab/grading.hpp"

using namespace fraylab;

TEST(Grading, AddIsComponentwise) {
  EXPECT_EQ(deg_add({1, -2, 3}, {0, 4, -1}), (MultiDegree{1, 2, 2}));
  EXPECT_EQ(MultiDegree(2, 2, 2) - MultiDegree(1, 3, 5), (MultiDegree{1, -1, -3}));
  EXPECT_EQ(MultiDegree(1, -2, 3) * 3, (MultiDegree{3, -6, 9}));
}

TEST(Grading, ParityIgnoresQ) {
  EXPECT_EQ(parity(kDegA, kDegA), 1);
  EXPECT_EQ(parity(kDegT, kDegT), 1);
  EXPECT_EQ(parity(kDegA, kDegT), 0);
  EXPECT_EQ(parity(kDegQ, kDegQ), 0);
  EXPECT_EQ(commutator_sign({0, 0, 1}, {0, 0, 1}), -1);
  EXPECT_EQ(commutator_sign({0, 0, 1}, {0, 7, 2}), 1);
  EXPECT_EQ(commutator_sign({1, 0, 1}, {1, 0, 1}), 1);
}

TEST(Grading, ParityIsSymmetricBilinear) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 500; ++it) {
    MultiDegree x{d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng)}, z{d(rng), d(rng), d(rng)};
    EXPECT_EQ(parity(x, y), parity(y, x));
    EXPECT_EQ(parity(x + y, z), (parity(x, z) + parity(y, z)) % 2);
    EXPECT_EQ(commutator_sign(x, y) * commutator_sign(x, z), commutator_sign(x, y + z));
  }
}

TEST(Grading, ShiftSign) {
  EXPECT_EQ(shift_sign({{0, 0, 1}}), -1);
  EXPECT_EQ(shift_sign({{1, 0, 1}}), 1);
  EXPECT_EQ(shift_sign({{0, 5, 0}}), 1);
  EXPECT_EQ(shift_sign({{1, 0, 0}}), -1);
}

TEST(Grading, OverflowIsAnError) {
  int big = std::numeric_limits<int>::max();
  EXPECT_THROW(deg_add({big, 0, 0}, {1, 0, 0}), std::overflow_error);
  EXPECT_THROW(MultiDegree(0, big, 0) * 2, std::overflow_error);
  EXPECT_THROW(-MultiDegree(0, 0, std::numeric_limits<int>::min()), std::overflow_error);
}

TEST(Grading, OrderingIsLexicographic) {
  EXPECT_LT((MultiDegree{0, 5, 5}), (MultiDegree{1, 0, 0}));
  EXPECT_LT((MultiDegree{1, -1, 9}), (MultiDegree{1, 0, 0}));
  EXPECT_EQ(to_string(MultiDegree{1, -2, 3}), "(1,-2,3)");
}
