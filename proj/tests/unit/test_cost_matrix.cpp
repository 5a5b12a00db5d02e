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

#include "core/cost_matrix.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "core/cortex_tree.hpp"
#include "expect_error.hpp"
#include "support.hpp"

namespace cortex {
namespace {

TEST(DefaultCostMatrix, TwoClasses) {
  const std::vector<size_t> counts = {90, 10};
  const auto m = DefaultCostMatrix(counts);
  EXPECT_NEAR(m.at(0, 1), 100.0 / 90.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.at(1, 0), 10.0);
  EXPECT_EQ(m.at(0, 0), 0.0);
  EXPECT_EQ(m.at(1, 1), 0.0);
}

TEST(DefaultCostMatrix, ThreeClasses) {
  const std::vector<size_t> counts = {50, 30, 20};
  const auto m = DefaultCostMatrix(counts);
  EXPECT_DOUBLE_EQ(m.at(0, 1), 1.6);
  EXPECT_NEAR(m.at(1, 0), 80.0 / 30.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.at(0, 2), 1.4);
  EXPECT_DOUBLE_EQ(m.at(2, 0), 3.5);
  EXPECT_NEAR(m.at(1, 2), 50.0 / 30.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.at(2, 1), 2.5);
}

TEST(DefaultCostMatrix, BalancedMatchesUnitLabels) {
  const std::vector<size_t> counts = {10, 10};
  const auto m = DefaultCostMatrix(counts);
  EXPECT_DOUBLE_EQ(m.at(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(m.at(1, 0), 2.0);
  const auto unit = CostMatrix::Uniform(2);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) {
    const std::vector<size_t> node = {rng() % 20, rng() % 20};
    if (node[0] + node[1] == 0) continue;
    EXPECT_EQ(LabelNode(node, m).label, LabelNode(node, unit).label);
  }
}

TEST(DefaultCostMatrix, EmptyClassIsError) {
  const std::vector<size_t> counts = {5, 0, 3};
  EXPECT_CORTEX_ERROR(DefaultCostMatrix(counts), ErrorKind::kData, "empty class");
}

TEST(DefaultCostMatrix, PropertyValidAndMinorityFavoured) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const size_t k = 2 + rng() % 28;
    std::vector<size_t> counts(k);
    for (auto& c : counts) c = 1 + rng() % 10000;
    const auto m = DefaultCostMatrix(counts);
    EXPECT_TRUE(Validate(m).ok());
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) {
        const double expected =
            i == j ? 0.0 : static_cast<double>(counts[i] + counts[j]) / counts[i];
        EXPECT_DOUBLE_EQ(m.at(i, j), expected);
        if (counts[i] < counts[j]) EXPECT_GT(m.at(i, j), m.at(j, i));
      }
    }
  }
}

TEST(Validate, ReasonableMatrixHasNoWarnings) {
  const CostMatrix m({{0, 1}, {5, 0}});
  const auto r = Validate(m);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Validate, HardViolationInRowOne) {
  const CostMatrix m({{0, 1}, {0.5, 2}});
  const auto r = Validate(m);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].row, 1u);
  EXPECT_EQ(r.violations[0].column, 0u);
  EXPECT_FALSE(r.Describe().empty());
}

// Enumeration oracle: row i violates against column j when C[i][i] >= C[i][j].
TEST(Validate, PropertyMatchesEnumeration) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> cell(0, 3);
  for (int t = 0; t < 500; ++t) {
    const size_t k = 2 + rng() % 4;
    std::vector<std::vector<double>> rows(k, std::vector<double>(k));
    for (auto& row : rows) {
      for (auto& v : row) v = cell(rng);
    }
    const auto r = Validate(CostMatrix(rows));
    size_t expected = 0;
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) expected += i != j && rows[i][i] >= rows[i][j];
    }
    EXPECT_EQ(r.violations.size(), expected);
  }
}

TEST(Validate, DominatedColumnWarns) {
  const CostMatrix m({{0, 1}, {0.5, 2}});
  const auto r = Validate(m);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.warnings[0].dominant, 1u);
  EXPECT_EQ(r.warnings[0].dominated, 0u);
}

// Row a favours column a over b and row b favours b over a, so a matrix
// without hard violations can never have a dominated column.
TEST(Validate, PropertyDominanceImpliesViolation) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> cell(0, 2);
  for (int t = 0; t < 2000; ++t) {
    const size_t k = 2 + rng() % 3;
    std::vector<std::vector<double>> rows(k, std::vector<double>(k));
    for (auto& row : rows) {
      for (auto& v : row) v = cell(rng);
    }
    const auto r = Validate(CostMatrix(rows));
    if (!r.warnings.empty()) EXPECT_FALSE(r.ok());
  }
}

TEST(CostMatrix, ConstructorChecks) {
  EXPECT_CORTEX_ERROR(CostMatrix(std::vector<std::vector<double>>{{0}}), ErrorKind::kData, "at least 2");
  EXPECT_CORTEX_ERROR(CostMatrix({{0, 1}, {1}}), ErrorKind::kData, "not square");
  EXPECT_CORTEX_ERROR(CostMatrix({{0, -1}, {1, 0}}), ErrorKind::kData, "negative");
  EXPECT_CORTEX_ERROR(CostMatrix({{0, NAN}, {1, 0}}), ErrorKind::kData, "finite");
}

TEST(ParseCostMatrix, TwoByTwo) {
  const auto loaded = ParseCostMatrix("0,1\n5,0\n", 2);
  EXPECT_EQ(loaded.matrix.rows(), (std::vector<std::vector<double>>{{0, 1}, {5, 0}}));
  EXPECT_TRUE(loaded.warnings.empty());
}

TEST(ParseCostMatrix, ErrorPaths) {
  EXPECT_CORTEX_ERROR(ParseCostMatrix("0,1,1\n1,0,1\n1,1,0\n", 2), ErrorKind::kData, "shape");
  EXPECT_CORTEX_ERROR(ParseCostMatrix("0,1\n0.5,2\n", 2), ErrorKind::kData, "reasonableness");
  EXPECT_CORTEX_ERROR(ParseCostMatrix("0,x\n1,0\n", 2), ErrorKind::kData, "'x'");
}

TEST(LoadCostMatrix, ReadsFile) {
  testing::TempDir dir("cm");
  std::ofstream(dir.file("c.csv")) << "0,2,3\n1,0,1\n4,4,0\n";
  const auto loaded = LoadCostMatrix(dir.file("c.csv"), 3);
  EXPECT_EQ(loaded.matrix.num_classes(), 3u);
  EXPECT_EQ(loaded.matrix.at(2, 1), 4.0);
  EXPECT_CORTEX_ERROR(LoadCostMatrix(dir.file("none.csv"), 3), ErrorKind::kData, "none.csv");
}

TEST(CostMatrix, UniformAndScaled) {
  const auto u = CostMatrix::Uniform(3, 2.0);
  EXPECT_EQ(u.at(0, 0), 0.0);
  EXPECT_EQ(u.at(0, 2), 2.0);
  EXPECT_EQ(u.Scaled(1.5).at(1, 0), 3.0);
}

}  // namespace
}  // namespace cortex
