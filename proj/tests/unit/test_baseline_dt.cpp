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

#include "core/baseline_dt.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "core/cortex_tree.hpp"
#include "expect_error.hpp"
#include "support.hpp"

namespace cortex {
namespace {

using testing::MakeDataset;

TEST(ClassWeights, Examples) {
  const std::vector<size_t> a = {90, 10};
  const auto wa = ClassWeights(a);
  EXPECT_NEAR(wa[0], 100.0 / 180.0, 1e-12);
  EXPECT_DOUBLE_EQ(wa[1], 5.0);
  const std::vector<size_t> b = {10, 10};
  EXPECT_EQ(ClassWeights(b), (std::vector<double>{1.0, 1.0}));
  const std::vector<size_t> c = {50, 30, 20};
  const auto wc = ClassWeights(c);
  EXPECT_NEAR(wc[0], 100.0 / 150.0, 1e-12);
  EXPECT_NEAR(wc[1], 100.0 / 90.0, 1e-12);
  EXPECT_NEAR(wc[2], 100.0 / 60.0, 1e-12);
  const std::vector<size_t> z = {4, 0};
  EXPECT_CORTEX_ERROR(ClassWeights(z), ErrorKind::kData, "empty class");
}

TEST(ClassWeights, PropertyEqualisesClassMass) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const size_t k = 2 + rng() % 10;
    std::vector<size_t> counts(k);
    for (auto& c : counts) c = 1 + rng() % 1000;
    const auto w = ClassWeights(counts);
    const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
    for (size_t i = 0; i < k; ++i) EXPECT_NEAR(w[i] * counts[i], n / k, 1e-9 * n);
  }
}

TEST(WeightedGini, Values) {
  const std::vector<size_t> pure = {5, 0};
  const std::vector<double> w = {1.0, 3.0};
  EXPECT_EQ(WeightedGini(pure, w), 0.0);
  const std::vector<size_t> mixed = {3, 1};
  // Masses 3 and 3 -> q = (0.5, 0.5).
  EXPECT_DOUBLE_EQ(WeightedGini(mixed, w), 0.5);
  const std::vector<size_t> empty = {0, 0};
  EXPECT_EQ(WeightedGini(empty, w), 0.0);
}

TEST(FitWeighted, SeparableMatchesCortexStructure) {
  const auto data = MakeDataset(1, 2, {1, 2, 3, 4}, {0, 0, 1, 1});
  const auto dt = FitWeighted(data);
  const auto cx = FitCortex(data, CostMatrix::Uniform(2));
  ASSERT_EQ(dt.nodes().size(), cx.nodes().size());
  for (size_t i = 0; i < dt.nodes().size(); ++i) {
    const auto& a = dt.nodes()[i];
    const auto& b = cx.nodes()[i];
    EXPECT_EQ(a.is_leaf(), b.is_leaf());
    EXPECT_EQ(a.label, b.label);
    EXPECT_EQ(a.counts, b.counts);
    if (!a.is_leaf()) {
      EXPECT_EQ(a.split->feature, b.split->feature);
      EXPECT_EQ(a.split->threshold, b.split->threshold);
    }
  }
}

TEST(FitWeighted, MinorityLeafOnImbalancedData) {
  std::vector<double> values;
  std::vector<ClassIndex> labels;
  for (int i = 0; i < 200; ++i) {
    const bool minority = i % 20 == 0;
    values.push_back(minority ? 100.0 + i : i);
    labels.push_back(minority);
  }
  const auto data = MakeDataset(1, 2, values, labels);
  const auto tree = FitWeighted(data);
  const auto pred = tree.PredictAll(data);
  for (size_t i = 0; i < pred.size(); ++i) EXPECT_EQ(pred[i], labels[i]);
  bool minority_leaf = false;
  for (const auto& n : tree.nodes()) minority_leaf |= n.is_leaf() && n.label == 1;
  EXPECT_TRUE(minority_leaf);
}

TEST(FitWeighted, MaxDepthZeroUsesWeightedArgmax) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const size_t k = 2 + rng() % 4;
    const auto data = testing::RandomDataset(rng, 10 + rng() % 40, 2, k);
    bool all_present = true;
    for (size_t c : data.class_counts()) all_present &= c > 0;
    if (!all_present) continue;
    TreeParams p;
    p.max_depth = 0;
    const auto tree = FitWeighted(data, p);
    ASSERT_EQ(tree.num_leaves(), 1u);
    const auto w = ClassWeights(data.class_counts());
    size_t best = 0;
    for (size_t i = 1; i < k; ++i) {
      if (w[i] * data.class_counts()[i] > w[best] * data.class_counts()[best] + 1e-9) best = i;
    }
    EXPECT_EQ(static_cast<size_t>(tree.root().label), best);
  }
}

TEST(FitWeighted, AbsentClassNeverPredicted) {
  std::mt19937_64 rng(5);
  auto data = testing::RandomDataset(rng, 60, 2, 3);
  std::vector<ClassIndex> labels(data.labels().begin(), data.labels().end());
  for (auto& l : labels) l = l == 2 ? 0 : l;
  const auto fit = data.WithLabels(labels);
  const auto tree = FitWeighted(fit);
  for (const auto& n : tree.nodes()) {
    if (n.is_leaf()) EXPECT_NE(n.label, 2);
  }
  EXPECT_EQ(tree.PredictAll(fit), labels);
}

// Exhaustive Gini oracle over all midpoints; near-ties within 1e-9 accept
// either candidate.
TEST(FitWeighted, PropertyRootSplitMatchesExhaustiveOracle) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const size_t k = 2 + rng() % 3;
    const auto data = testing::RandomDataset(rng, 6 + rng() % 30, 1 + rng() % 3, k, 7);
    bool all_present = true;
    for (size_t c : data.class_counts()) all_present &= c > 0;
    if (!all_present) continue;
    const auto w = ClassWeights(data.class_counts());
    auto score = [&](const std::vector<double>& mass) {
      const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
      if (total <= 0.0) return 0.0;
      double sq = 0.0;
      for (double m : mass) sq += m * m;
      return total - sq / total;
    };
    std::vector<double> parent(k, 0.0);
    for (auto y : data.labels()) parent[y] += w[y];
    struct Cand {
      size_t f;
      double t;
      double gain;
    };
    std::vector<Cand> cands;
    for (size_t f = 0; f < data.num_features(); ++f) {
      std::set<double> d;
      for (size_t i = 0; i < data.num_rows(); ++i) d.insert(data.at(i, f));
      std::vector<double> v(d.begin(), d.end());
      for (size_t a = 0; a + 1 < v.size(); ++a) {
        const double th = (v[a] + v[a + 1]) / 2;
        std::vector<double> l(k, 0.0), r(k, 0.0);
        for (size_t i = 0; i < data.num_rows(); ++i) {
          (data.at(i, f) <= th ? l : r)[data.labels()[i]] += w[data.labels()[i]];
        }
        cands.push_back({f, th, score(parent) - score(l) - score(r)});
      }
    }
    double best = 0.0;
    for (const auto& c : cands) best = std::max(best, c.gain);

    std::vector<size_t> idx(data.num_rows());
    std::iota(idx.begin(), idx.end(), 0);
    const auto got = FindBestSplit(data, idx, WeightedGiniCriterion(w), {});
    if (best <= 1e-9) {
      if (got) EXPECT_LE(got->gain, 1e-9);
      continue;
    }
    ASSERT_TRUE(got) << "trial " << t;
    const auto it = std::find_if(cands.begin(), cands.end(), [&](const Cand& c) {
      return c.f == got->rule.feature && c.t == got->rule.threshold;
    });
    ASSERT_NE(it, cands.end());
    EXPECT_NEAR(it->gain, best, 1e-9) << "trial " << t;
    // The first candidate within tolerance of the best, in scan order.
    const auto first = std::find_if(cands.begin(), cands.end(),
                                    [&](const Cand& c) { return c.gain > best - 1e-9; });
    const auto clear = std::count_if(cands.begin(), cands.end(),
                                     [&](const Cand& c) { return c.gain > best - 1e-9; });
    if (clear == 1) EXPECT_EQ(first, it);
  }
}

TEST(FitWeighted, PropertyPureOnDistinctRows) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const size_t k = 2 + rng() % 4;
    const auto data = testing::RandomDataset(rng, 50 + rng() % 300, 1 + rng() % 5, k);
    // Random labels on one feature can need more than the default depth.
    TreeParams params;
    params.max_depth = 1000;
    const auto tree = FitWeighted(data, params);
    const auto pred = tree.PredictAll(data);
    EXPECT_TRUE(std::equal(pred.begin(), pred.end(), data.labels().begin())) << "trial " << t;
  }
}

}  // namespace
}  // namespace cortex
