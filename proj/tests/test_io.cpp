#include <gtest/gtest.h>

#include "fraylab/json_io.hpp"
#include "fraylab/suites.hpp"

using namespace fraylab;

TEST(Json, DegreeRoundTrip) {
  MultiDegree d{1, -4, 2};
  EXPECT_EQ(to_json(d).dump(), "[1,-4,2]");
  EXPECT_EQ(degree_from_json(to_json(d)), d);
  EXPECT_THROW(degree_from_json(Json::array({1, 2})), std::invalid_argument);
}

TEST(Json, PolyRoundTrip) {
  Poly p = Poly::sym(e_sym(1, 2)) * Poly::sym(e_sym(2, 1, 1)).pow(3) * Rational(-3, 7) +
           Poly::sym(u_sym(2)) * Poly::sym(x_sym(3)) + Poly::sym(y_sym(1, 2)) + Rational(5, 2) +
           Poly::sym(unzip_sym());
  Json j = to_json(p);
  EXPECT_EQ(poly_from_json(j), p);
  EXPECT_EQ(poly_from_json(Json::parse(j.dump())), p);
}

TEST(Json, ElementaryMonomialFormat) {
  Json j = to_json(Poly::sym(e_sym(2, 1, 1), 2) * Rational(1, 3));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["coeff"], "1/3");
  EXPECT_EQ(j[0]["monomial"].dump(), "[[2,1,1,2]]");
}

TEST(Json, SeriesRoundTripAndOrder) {
  Window w{0, 1, -2, 6, 0, 1};
  TriSeries s(w);
  s.add({1, -2, 0}, 1);
  s.add({0, 4, 1}, Rational(-2, 3));
  s.add({0, 0, 0}, 7);
  Json j = to_json(s);
  EXPECT_EQ(series_from_json(j), s);
  EXPECT_EQ(j["terms"][0]["q"], 0);
  EXPECT_EQ(j["terms"][2]["a"], 1);
}

TEST(Json, ComplexDumpIsDeterministic) {
  FrayedProjector p = make_projector(Composition{1, 1}, ProjectorVariant::DefInfinite, 2);
  Json a = to_json(p), b = to_json(make_projector(Composition{1, 1}, ProjectorVariant::DefInfinite, 2));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["schema"], kSchema);
  EXPECT_EQ(a["objects"].size(), 4u);
  EXPECT_EQ(a["variant"], "def_infinite");
  // connection entries parse back as polynomials
  for (const auto& group : a["connection"])
    for (const auto& e : group["entries"]) EXPECT_FALSE(poly_from_json(e[2]).is_zero());
}

TEST(Json, UnknotReportShape) {
  UnknotReport r = unknot_invariant(Variant::Intrinsic, 1, 0, table_window(Variant::Intrinsic, 1, 0));
  Json j = to_json(r);
  EXPECT_EQ(j["variant"], "intrinsic");
  EXPECT_EQ(j["match"], true);
  EXPECT_TRUE(j["mismatches"].empty());
  EXPECT_EQ(series_from_json(j["computed"]), r.computed);
}

TEST(Report, SuiteIsDeterministicUnderSeed) {
  SuiteOptions o;
  o.seed = 5;
  o.n = 3;
  Json a = to_json(run_suite("gauss", o)), b = to_json(run_suite("gauss", o));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["checks"].size(), 3u);
  EXPECT_EQ(a["pass"], true);
  EXPECT_THROW(run_suite("nope", o), std::invalid_argument);
}
