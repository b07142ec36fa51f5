#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "syngauntlet/error.hpp"
#include "syngauntlet/prediction.hpp"

using namespace syngauntlet;

namespace {

SurprisalTable table(std::initializer_list<std::tuple<std::string, int, double>> entries) {
  SurprisalTable t;
  for (const auto& [c, r, v] : entries) t.set(c, r, v);
  return t;
}

std::size_t error_column(const std::string& source) {
  try {
    parse_prediction(source);
  } catch (const ParseError& e) {
    return e.column();
  }
  ADD_FAILURE() << "parsed: " << source;
  return 0;
}

}  // namespace

TEST(Parse, SimpleComparison) {
  EXPECT_EQ(parse_prediction("(2;match) < (2;mismatch)"), target(2, "match") < target(2, "mismatch"));
}

TEST(Parse, DifferenceOfDifferences) {
  const auto ast = parse_prediction("((2;light_np)-(2;heavy_np)) > ((2;heavy_vp)-(2;light_vp))");
  EXPECT_EQ(ast, (target(2, "light_np") - target(2, "heavy_np")) > (target(2, "heavy_vp") - target(2, "light_vp")));
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_prediction("(1;a) - (1;b) + (1;c) < 2"),
            ((target(1, "a") - target(1, "b")) + target(1, "c")) < literal(2));
  const auto a = target(1, "a") < target(1, "b");
  const auto b = target(1, "b") < target(1, "c");
  const auto c = target(1, "c") < target(1, "d");
  EXPECT_EQ(parse_prediction("(1;a)<(1;b) | (1;b)<(1;c) & (1;c)<(1;d)"), a || (b && c));
  EXPECT_EQ(parse_prediction("((1;a)<(1;b) | (1;b)<(1;c)) & (1;c)<(1;d)"), (a || b) && c);
}

TEST(Parse, WhitespaceInsignificant) {
  EXPECT_EQ(parse_prediction("( 2 ; match )<(2;mismatch)"), parse_prediction("(2;match) < (2;mismatch)"));
}

TEST(Parse, ErrorColumns) {
  EXPECT_EQ(error_column("(2;a < (2;b)"), 6u);
  EXPECT_EQ(error_column(""), 1u);
  EXPECT_EQ(error_column("(2;a) <"), 8u);
  EXPECT_EQ(error_column("(2;a) + (2;b)"), 1u);  // arithmetic where a formula is required
  EXPECT_EQ(error_column("(1;a) < (1;b) & (1;c)"), 17u);
  EXPECT_EQ(error_column("(2;a) < (2;b) $"), 15u);
}

TEST(Parse, RoundTripThroughText) {
  for (const char* src : {"(2;match) < (2;mismatch)", "((4;a)-(4;b)) > ((4;c)-(4;d)) & (4;a) < 1.5",
                          "(1;x) + (2;x) < (1;y) + (2;y) | (3;z) > 0"}) {
    const auto ast = parse_prediction(src);
    EXPECT_EQ(parse_prediction(to_string(ast)), ast) << src;
  }
}

TEST(Targets, Referenced) {
  EXPECT_EQ(referenced_targets(parse_prediction("(2;a) < (2;b)")), (std::set<Target>{{2, "a"}, {2, "b"}}));
  EXPECT_TRUE(referenced_targets(parse_prediction("1.0 < 2.0")).empty());
  EXPECT_EQ(referenced_targets(parse_prediction("(1;a)<(1;b) & (1;b)<(1;c) & (2;a)<(1;c)")).size(), 4u);
}

TEST(Evaluate, StrictComparisons) {
  EXPECT_TRUE(evaluate_prediction(parse_prediction("(2;match)<(2;mismatch)"),
                                  table({{"match", 2, 3.0}, {"mismatch", 2, 5.0}})));
  EXPECT_FALSE(evaluate_prediction(parse_prediction("(2;a)<(2;b)"), table({{"a", 2, 4.0}, {"b", 2, 4.0}})));
  EXPECT_FALSE(evaluate_prediction(parse_prediction("(2;a)>(2;b)"), table({{"a", 2, 4.0}, {"b", 2, 4.0}})));
}

TEST(Evaluate, MissingTargetEvenWhenShortCircuitWouldSkipIt) {
  const auto t = table({{"a", 1, 1.0}, {"b", 1, 2.0}});
  EXPECT_THROW(evaluate_prediction(parse_prediction("(1;a)>(1;b) & (1;c)<(1;a)"), t), MissingTargetError);
  EXPECT_THROW(evaluate_prediction(parse_prediction("(1;a)<(1;b) | (1;c)<(1;a)"), t), MissingTargetError);
  try {
    evaluate_prediction(parse_prediction("(1;a)<(1;b) | (7;c)<(1;a)"), t);
  } catch (const MissingTargetError& e) {
    EXPECT_EQ(e.region(), 7);
    EXPECT_EQ(e.condition(), "c");
  }
}

TEST(Evaluate, ScaleInvarianceWithoutLiterals) {
  const auto ast = parse_prediction("((1;a)-(1;b)) > ((1;c)-(1;d)) & (1;a) > (1;b)");
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = table({{"a", 1, u(rng)}, {"b", 1, u(rng)}, {"c", 1, u(rng)}, {"d", 1, u(rng)}});
    for (double k : {std::log(2.0), 0.25, 3.0}) {
      EXPECT_EQ(evaluate_prediction(ast, t), evaluate_prediction(ast, t.scaled(k)));
    }
  }
}

TEST(Evaluate, Arithmetic) {
  const auto t = table({{"a", 1, 1.5}, {"a", 2, 2.0}, {"b", 1, 0.25}});
  EXPECT_DOUBLE_EQ(evaluate_arith(target(1, "a") + target(2, "a") - target(1, "b"), t), 3.25);
  EXPECT_DOUBLE_EQ(evaluate_arith(literal(1.5) - target(1, "b"), t), 1.25);
  EXPECT_TRUE(evaluate_prediction(parse_prediction("(1;a) + (2;a) > 3.2"), t));
  EXPECT_FALSE(evaluate_prediction(parse_prediction("(1;a) + (2;a) > 3.5"), t));
}
