#include <gtest/gtest.h>

#include "chabauty/error.hpp"
#include "chabauty/json_io.hpp"

#include "oracles.hpp"

using namespace chabauty;
using nlohmann::json;

TEST(JsonIo, Rationals) {
  EXPECT_EQ(rational_from_json(json("3/6")), Rational(1, 2));
  EXPECT_EQ(rational_from_json(json(-4)), Rational(-4));
  EXPECT_EQ(rational_to_json(oracle::frac(-2, 4)), json("-1/2"));
  EXPECT_THROW(rational_from_json(json(0.5)), ParseError);
}

TEST(JsonIo, SubgroupRoundTrip) {
  json in = json::parse(R"({"ambient":{"a":1,"b":0,"c":1,"finite":[]},"cont":[],"disc":[["1","1/2"]]})");
  ElementarySubgroup h = subgroup_from_json(in);
  json out = subgroup_to_json(h);
  EXPECT_EQ(out["canonical"], true);
  EXPECT_EQ(out["disc"], json::parse(R"([["1","1/2"],["0","1"]])"));
  EXPECT_EQ(subgroup_from_json(out), h);
}

TEST(JsonIo, SchemaErrors) {
  EXPECT_THROW(subgroup_from_json(json::parse(R"({"cont":[]})")), ParseError);
  EXPECT_THROW(subgroup_from_json(json::parse(R"({"ambient":{"a":2},"disc":[["1"]]})")), ParseError);
  EXPECT_THROW(subgroup_from_json(json::parse(R"({"ambient":{"a":1,"finite":[1]}})")), ParseError);
}

TEST(JsonIo, Params) {
  MetricParams p = params_from_json(json::parse(R"({"r_cut":"7/1","delta":"1/20"})"));
  EXPECT_EQ(p.r_cut, 7);
  EXPECT_EQ(p.delta, Rational(1, 20));
}

TEST(JsonIo, FiniteGroupNormalized) {
  EXPECT_EQ(finite_group_from_json(json::parse(R"({"invariant_factors":[2,4]})")).invariant_factors(),
            (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(finite_group_from_json(json::parse("[3,4]")).invariant_factors(), (std::vector<std::int64_t>{12}));
  EXPECT_THROW(finite_group_from_json(json::parse("[1]")), ParseError);
}

TEST(JsonIo, Classify) {
  json r = classify_to_json(GroupDescriptor::parse("R*R"));
  EXPECT_EQ(r["sdim"], 4);
  EXPECT_EQ(r["connectivity"]["kind"], "Connected");
  EXPECT_EQ(r["connectivity"]["path_connected"], true);
  EXPECT_EQ(r["component_cardinality"]["kind"], "SinglePoint");
}
