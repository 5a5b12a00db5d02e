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

#include "core/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "expect_error.hpp"
#include "stats_oracle.hpp"

namespace cortex::stats {
namespace {

TEST(AverageRanks, Ties) {
  const std::vector<double> v = {3, 1, 3, 2};
  EXPECT_EQ(AverageRanks(v), (std::vector<double>{3.5, 1, 3.5, 2}));
  EXPECT_EQ(DirectedRanks(v, Direction::kHigherBetter), (std::vector<double>{1.5, 4, 1.5, 3}));
  EXPECT_EQ(DirectedRanks(v, Direction::kLowerBetter), (std::vector<double>{3.5, 1, 3.5, 2}));
}

TEST(Wilcoxon, AllPositiveSix) {
  const std::vector<double> a = {1, 2, 3, 4, 5, 6}, b(6, 0.0);
  const auto r = Wilcoxon(a, b);
  EXPECT_EQ(r.w, 0.0);
  EXPECT_EQ(r.w_plus, 21.0);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.p_value, 0.03125, 1e-15);
  EXPECT_TRUE(r.reject);
}

TEST(Wilcoxon, MixedSigns) {
  const std::vector<double> a = {1, -2, 3, -4, 5, 6}, b(6, 0.0);
  const auto r = Wilcoxon(a, b);
  EXPECT_EQ(r.w_minus, 6.0);
  EXPECT_EQ(r.w_plus, 15.0);
  EXPECT_EQ(r.w, 6.0);
  EXPECT_NEAR(r.p_value, testing::BruteWilcoxonP({1, 2, 3, 4, 5, 6}, 6.0), 1e-12);
}

TEST(Wilcoxon, ZerosDroppedAndGuards) {
  const std::vector<double> a = {1, 1, 1, 1, 1}, b = {1, 1, 1, 1, 1};
  const auto r = Wilcoxon(a, b);
  EXPECT_EQ(r.n_nonzero, 0u);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.reject);
  const std::vector<double> four = {1, 2, 3, 4};
  EXPECT_CORTEX_ERROR(Wilcoxon(four, four), ErrorKind::kConfig, "at least 5");
  const std::vector<double> five = {1, 2, 3, 4, 5};
  EXPECT_CORTEX_ERROR(Wilcoxon(five, four), ErrorKind::kData, "equal length");
}

TEST(Wilcoxon, PropertyExactMatchesBruteForce) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 400; ++t) {
    const size_t n = 5 + rng() % 8;
    std::vector<double> a(n), b(n, 0.0);
    // Small integer magnitudes force ties among |d|.
    for (auto& v : a) v = (static_cast<int>(rng() % 9) - 4) * (t % 2 ? 1.0 : 0.37);
    const auto r = Wilcoxon(a, b);
    if (r.n_nonzero == 0) continue;
    std::vector<double> mags;
    for (double v : a) {
      if (v != 0.0) mags.push_back(std::abs(v));
    }
    const auto ranks = AverageRanks(mags);
    ASSERT_NEAR(r.p_value, testing::BruteWilcoxonP(ranks, r.w), 1e-12) << "trial " << t;
  }
}

TEST(Wilcoxon, NormalApproximationAboveLimit) {
  std::mt19937_64 rng(52);
  std::normal_distribution<double> g(0.3, 1.0);
  std::vector<double> a(40), b(40, 0.0);
  for (auto& v : a) v = g(rng);
  const auto r = Wilcoxon(a, b);
  EXPECT_FALSE(r.exact);
  EXPECT_GT(r.p_value, 0.0);
  EXPECT_LE(r.p_value, 1.0);
  // The exact tail at n = 40 is still computable and close to the approximation.
  std::vector<double> mags;
  for (double v : a) mags.push_back(std::abs(v));
  EXPECT_NEAR(r.p_value, WilcoxonExactPValue(AverageRanks(mags), r.w), 0.01);
}

RankTable Table(size_t k, std::vector<std::vector<double>> blocks) {
  RankTable t;
  for (size_t j = 0; j < k; ++j) t.methods.push_back("m" + std::to_string(j));
  t.blocks = std::move(blocks);
  return t;
}

TEST(Friedman, PerfectlyOrderedWorkedExample) {
  const auto t = Table(3, {{3, 2, 1}, {3, 2, 1}, {3, 2, 1}, {3, 2, 1}});
  const auto r = Friedman(t);
  EXPECT_NEAR(r.statistic, 8.0, 1e-12);
  EXPECT_NEAR(r.p_value, std::exp(-4.0), 1e-12);
  EXPECT_NEAR(r.p_value, 0.0183, 5e-5);
  EXPECT_TRUE(r.reject);
  EXPECT_EQ(r.mean_ranks, (std::vector<double>{1, 2, 3}));
}

TEST(Friedman, IdenticalMethods) {
  const auto t = Table(3, {{1, 1, 1}, {2, 2, 2}, {0.5, 0.5, 0.5}});
  const auto r = Friedman(t);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.reject);
}

TEST(Friedman, Guards) {
  EXPECT_CORTEX_ERROR(Friedman(Table(3, {{1, 2, 3}})), ErrorKind::kConfig, "2 blocks");
  EXPECT_CORTEX_ERROR(Friedman(Table(1, {{1}, {2}})), ErrorKind::kConfig, "2 methods");
  EXPECT_CORTEX_ERROR(Friedman(Table(2, {{1, 2}, {1}})), ErrorKind::kData, "ragged");
}

TEST(Friedman, PropertyExactMatchesEnumeration) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 200; ++t) {
    const size_t n = 2 + rng() % 4;
    std::vector<std::vector<double>> blocks(n, std::vector<double>(3));
    for (auto& b : blocks) {
      for (auto& v : b) v = static_cast<double>(rng() % (t % 2 ? 3 : 100));
    }
    auto table = Table(3, blocks);
    table.direction = t % 3 ? Direction::kHigherBetter : Direction::kLowerBetter;
    const auto exact = FriedmanExactPValue(table);
    ASSERT_TRUE(exact.has_value());
    ASSERT_NEAR(*exact, testing::BruteFriedmanP(table), 1e-9) << "trial " << t;
    EXPECT_EQ(Friedman(table).exact_p_value, exact);
  }
}

// With two methods and no ties the statistic reduces to the sign-test
// chi-square (wins - losses)^2 / n.
TEST(Friedman, PropertyTwoMethodsIsSignTest) {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const size_t n = 2 + rng() % 30;
    std::vector<std::vector<double>> blocks(n);
    int wins = 0;
    for (auto& b : blocks) {
      b = {u(rng), u(rng)};
      wins += b[0] > b[1];
    }
    const double d = 2.0 * wins - static_cast<double>(n);
    EXPECT_NEAR(Friedman(Table(2, blocks)).statistic, d * d / n, 1e-9);
  }
}

TEST(Friedman, PropertyStatisticInRange) {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 300; ++t) {
    const size_t k = 2 + rng() % 5, n = 2 + rng() % 15;
    std::vector<std::vector<double>> blocks(n, std::vector<double>(k));
    for (auto& b : blocks) {
      for (auto& v : b) v = static_cast<double>(rng() % 4);
    }
    const auto r = Friedman(Table(k, blocks));
    EXPECT_GE(r.statistic, 0.0);
    EXPECT_LE(r.statistic, n * (k - 1.0) + 1e-9);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
  }
}

TEST(RankAndNormalize, Examples) {
  EXPECT_EQ(RankAndNormalize({{0.9, 0.8}, {0.1, 0.2}}, Direction::kHigherBetter),
            (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(RankAndNormalize({{1, 1}, {1, 1}, {1, 1}}, Direction::kHigherBetter),
            (std::vector<double>{0.5, 0.5, 0.5}));
  EXPECT_EQ(RankAndNormalize({{3}, {3}, {6}}, Direction::kLowerBetter),
            (std::vector<double>{0.25, 0.25, 1.0}));
  EXPECT_CORTEX_ERROR(RankAndNormalize({{1}}, Direction::kHigherBetter), ErrorKind::kConfig,
                      "2 methods");
}

TEST(RankAndNormalize, PropertyBoundedAndOrdered) {
  std::mt19937_64 rng(56);
  for (int t = 0; t < 200; ++t) {
    const size_t k = 2 + rng() % 5, n = 1 + rng() % 20;
    std::vector<std::vector<double>> m(k, std::vector<double>(n));
    for (auto& row : m) {
      for (auto& v : row) v = static_cast<double>(rng() % 5);
    }
    const auto out = RankAndNormalize(m, Direction::kHigherBetter);
    double mean = 0.0;
    for (double v : out) {
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, 1.0 + 1e-12);
      mean += v / k;
    }
    // Rank sums always total n k (k + 1) / 2, so the normalized mean is 0.5.
    EXPECT_NEAR(mean, 0.5, 1e-12);
  }
}

}  // namespace
}  // namespace cortex::stats
