/*
 * Copyright 2026 The Cortex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/rules.hpp"

#include <gtest/gtest.h>

#include <random>

#include "core/baseline_dt.hpp"
#include "core/cortex_tree.hpp"
#include "expect_error.hpp"
#include "support.hpp"

namespace cortex {
namespace {

using testing::MakeDataset;
constexpr auto kLe = Comparison::kLessEqual;
constexpr auto kGt = Comparison::kGreater;

Tree StumpTree() {
  const auto data = MakeDataset(1, 2, {1, 2, 3, 4}, {0, 0, 1, 1});
  return FitCortex(data, CostMatrix::Uniform(2));
}

TEST(ExtractRules, StumpGivesTwoRules) {
  const auto rules = ExtractRules(StumpTree());
  ASSERT_EQ(rules.rules.size(), 2u);
  EXPECT_EQ(rules.rules[0].antecedents, (std::vector<Antecedent>{{0, kLe, 2.5}}));
  EXPECT_EQ(rules.rules[0].consequent, 0);
  EXPECT_EQ(rules.rules[1].antecedents, (std::vector<Antecedent>{{0, kGt, 2.5}}));
  EXPECT_EQ(rules.rules[1].consequent, 1);
  EXPECT_EQ(RulesToText(rules),
            "IF (x0 <= 2.5) THEN class = c00\n"
            "IF (x0 > 2.5) THEN class = c01\n");
}

TEST(ExtractRules, SingleLeafGivesVacuousRule) {
  const auto data = MakeDataset(1, 2, {1, 2, 3}, {1, 1, 0});
  TreeParams p;
  p.max_depth = 0;
  const auto rules = ExtractRules(FitCortex(data, CostMatrix::Uniform(2), p));
  ASSERT_EQ(rules.rules.size(), 1u);
  EXPECT_TRUE(rules.rules[0].antecedents.empty());
  EXPECT_EQ(RulesToText(rules), "IF TRUE THEN class = c01\n");
  const std::vector<double> x = {-1e9};
  EXPECT_EQ(ApplyRules(rules, x), 1);
  const auto size = SizeMetrics(rules);
  EXPECT_EQ(size.num_rules, 1u);
  EXPECT_EQ(size.average_length, 0.0);
}

TEST(Simplify, Examples) {
  const std::vector<Antecedent> path = {{0, kGt, 1.0}, {0, kGt, 2.0}, {1, kLe, 5.0}};
  EXPECT_EQ(Simplify(path), (std::vector<Antecedent>{{0, kGt, 2.0}, {1, kLe, 5.0}}));
  const std::vector<Antecedent> le = {{0, kLe, 5}, {0, kLe, 3}};
  EXPECT_EQ(Simplify(le), (std::vector<Antecedent>{{0, kLe, 3}}));
  const std::vector<Antecedent> one = {{1, kGt, 2}};
  EXPECT_EQ(Simplify(one), one);
  const std::vector<Antecedent> order = {{0, kGt, 1}, {1, kLe, 4}, {0, kLe, 9}};
  EXPECT_EQ(Simplify(order),
            (std::vector<Antecedent>{{0, kGt, 1}, {0, kLe, 9}, {1, kLe, 4}}));
}

TEST(Simplify, ContradictionIsInternalError) {
  const std::vector<Antecedent> bad = {{0, kGt, 3}, {0, kLe, 2}};
  EXPECT_CORTEX_ERROR(Simplify(bad), ErrorKind::kInternal, "contradictory");
}

// Soundness oracle: the simplified conjunction agrees with the raw one on
// random points and on every threshold and its neighbours.
TEST(Simplify, PropertySoundness) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> th(-5, 5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  int checked = 0;
  for (int t = 0; t < 3000; ++t) {
    std::vector<Antecedent> path;
    const size_t len = 1 + rng() % 6;
    for (size_t i = 0; i < len; ++i) {
      path.push_back({rng() % 3, rng() % 2 ? kLe : kGt, th(rng) + 0.5});
    }
    std::vector<double> lo(3, -1e300), hi(3, 1e300);
    for (const auto& a : path) {
      if (a.op == kGt) lo[a.feature] = std::max(lo[a.feature], a.threshold);
      else hi[a.feature] = std::min(hi[a.feature], a.threshold);
    }
    bool feasible = true;
    for (int f = 0; f < 3; ++f) feasible &= lo[f] < hi[f];
    if (!feasible) continue;
    ++checked;
    const auto simple = Simplify(path);
    EXPECT_LE(simple.size(), path.size());
    EXPECT_LE(simple.size(), 6u);
    for (int s = 0; s < 200; ++s) {
      std::vector<double> x(3);
      for (auto& v : x) v = s % 2 ? u(rng) : th(rng) + 0.5 * (rng() % 3);
      bool raw = true, simp = true;
      for (const auto& a : path) raw &= a.Holds(x);
      for (const auto& a : simple) simp &= a.Holds(x);
      ASSERT_EQ(raw, simp);
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(ApplyRules, BoundaryAndFallthrough) {
  const auto rules = ExtractRules(StumpTree());
  const std::vector<double> at = {2.5}, above = {3.0};
  EXPECT_EQ(ApplyRules(rules, at), 0);
  EXPECT_EQ(ApplyRules(rules, above), 1);
  RuleSet partial{{rules.rules[0]}, rules.schema};
  EXPECT_FALSE(ApplyRules(partial, above).has_value());
  const std::vector<double> wrong = {1.0, 2.0};
  EXPECT_CORTEX_ERROR(ApplyRules(rules, wrong), ErrorKind::kData, "length");
}

TEST(SizeMetrics, Examples) {
  const auto schema = testing::NumericSchema(2, 2);
  RuleSet two{{Rule{{{0, kLe, 1}}, 0}, Rule{{{0, kGt, 1}}, 1}}, schema};
  EXPECT_EQ(SizeMetrics(two).num_rules, 2u);
  EXPECT_EQ(SizeMetrics(two).average_length, 1.0);
  RuleSet mixed{{Rule{{{0, kLe, 1}, {1, kLe, 1}}, 0},
                 Rule{{{0, kGt, 1}, {1, kGt, 1}, {0, kLe, 3}, {1, kLe, 3}}, 1}},
                schema};
  EXPECT_EQ(SizeMetrics(mixed).average_length, 3.0);
  RuleSet empty{{}, schema};
  EXPECT_CORTEX_ERROR(SizeMetrics(empty), ErrorKind::kData, "empty");
}

TEST(ExtractRules, PropertyPartitionAndTreeEquivalence) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int t = 0; t < 30; ++t) {
    const size_t k = 2 + rng() % 4;
    const auto data = testing::RandomDataset(rng, 60 + rng() % 200, 1 + rng() % 4, k,
                                             t % 3 == 0 ? 4 : 0);
    const Tree tree = t % 2 ? FitWeighted(data)
                            : FitCortex(data, testing::RandomCostMatrix(rng, k));
    const auto rules = ExtractRules(tree);
    EXPECT_EQ(rules.rules.size(), tree.num_leaves());
    for (const auto& r : rules.rules) {
      EXPECT_LE(r.antecedents.size(), r.raw_length);
      EXPECT_LE(r.antecedents.size(), 2 * data.num_features());
      EXPECT_EQ(r.raw_length, static_cast<size_t>(tree.nodes()[r.leaf].depth));
    }
    for (int s = 0; s < 2000; ++s) {
      std::vector<double> x(data.num_features());
      for (auto& v : x) v = u(rng);
      size_t fired = 0;
      for (const auto& r : rules.rules) fired += r.Fires(x);
      ASSERT_EQ(fired, 1u);
      ASSERT_EQ(ApplyRules(rules, x), tree.Predict(x).label);
    }
  }
}

TEST(RulesJson, RoundTrip) {
  std::mt19937_64 rng(14);
  const auto data = testing::RandomDataset(rng, 120, 3, 3);
  const auto rules = ExtractRules(FitCortex(data, DefaultCostMatrix(data.class_counts())));
  const auto json = RulesToJson(rules);
  const auto back = RulesFromJson(json, data.schema_ptr());
  ASSERT_EQ(back.rules.size(), rules.rules.size());
  for (size_t i = 0; i < rules.rules.size(); ++i) {
    EXPECT_EQ(back.rules[i].antecedents, rules.rules[i].antecedents);
    EXPECT_EQ(back.rules[i].consequent, rules.rules[i].consequent);
    EXPECT_EQ(back.rules[i].raw_length, rules.rules[i].raw_length);
  }
  EXPECT_EQ(RulesToText(back), RulesToText(rules));
  EXPECT_CORTEX_ERROR(RulesFromJson("{", data.schema_ptr()), ErrorKind::kData, "JSON");
  EXPECT_CORTEX_ERROR(
      RulesFromJson(R"({"rules":[{"antecedents":[{"feature":"nope","op":"<=","threshold":1}],)"
                    R"("class":"c00"}]})",
                    data.schema_ptr()),
      ErrorKind::kData, "unknown feature");
}

TEST(RenderRule, OneHotFeatures) {
  const auto data = Encode(ParseCsvTable(
      "color,size,y\nred,1,a\nblue,2,b\nred,3,b\ngreen,4,a\nblue,5,a\n", "y"));
  const auto& schema = data.schema();
  const auto red = *schema.FindFeature("color=red");
  const auto size = *schema.FindFeature("size");
  const Rule rule{{{red, kGt, 0.5}, {size, kLe, 2.5}}, 1};
  EXPECT_EQ(RenderRule(rule, schema), "IF (color = red) AND (size <= 2.5) THEN class = b");
  const Rule neg{{{red, kLe, 0.5}}, 0};
  EXPECT_EQ(RenderRule(neg, schema), "IF (color != red) THEN class = a");
}

}  // namespace
}  // namespace cortex
