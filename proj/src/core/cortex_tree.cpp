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

#include "core/cortex_tree.hpp"

#include <numeric>

#include "core/error.hpp"

namespace cortex {

namespace {

void CheckCounts(std::span<const size_t> counts, const CostMatrix& costs) {
  if (counts.size() != costs.num_classes()) {
    ThrowInternal("class count vector has length " + std::to_string(counts.size()) +
                  ", cost matrix has " + std::to_string(costs.num_classes()) +
                  " classes");
  }
}

size_t Total(std::span<const size_t> counts) {
  return std::accumulate(counts.begin(), counts.end(), size_t{0});
}

}  // namespace

double NodeCost(std::span<const size_t> counts, const CostMatrix& costs,
                ClassIndex label) {
  CheckCounts(counts, costs);
  const auto k = static_cast<size_t>(label);
  if (label < 0 || k >= costs.num_classes()) ThrowInternal("label out of range");
  double cost = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0) cost += static_cast<double>(counts[i]) * costs.at(i, k);
  }
  return cost;
}

NodeLabel LabelNode(std::span<const size_t> counts, const CostMatrix& costs) {
  CheckCounts(counts, costs);
  if (Total(counts) == 0) ThrowInternal("cannot label an empty node");
  NodeLabel best{0, NodeCost(counts, costs, 0)};
  for (size_t k = 1; k < costs.num_classes(); ++k) {
    const double c = NodeCost(counts, costs, static_cast<ClassIndex>(k));
    if (c < best.cost) best = {static_cast<ClassIndex>(k), c};
  }
  return best;
}

std::vector<double> SoftProbabilities(std::span<const size_t> counts,
                                      const CostMatrix& costs) {
  CheckCounts(counts, costs);
  if (Total(counts) == 0) ThrowInternal("cannot label an empty node");
  const size_t k = costs.num_classes();
  std::vector<double> label_cost(k);
  double total = 0.0;
  for (size_t c = 0; c < k; ++c) {
    label_cost[c] = NodeCost(counts, costs, static_cast<ClassIndex>(c));
    total += label_cost[c];
  }
  std::vector<double> p(k, 1.0 / static_cast<double>(k));
  if (total > 0.0) {
    for (size_t c = 0; c < k; ++c) {
      p[c] = (1.0 - label_cost[c] / total) / static_cast<double>(k - 1);
    }
  }
  return p;
}

double CostCriterion::Score(std::span<const size_t> counts) const {
  if (Total(counts) == 0) return 0.0;
  return LabelNode(counts, costs_).cost;
}

LeafLabel CostCriterion::Label(std::span<const size_t> counts) const {
  return {LabelNode(counts, costs_).label, SoftProbabilities(counts, costs_)};
}

std::optional<SplitCandidate> BestCostSplit(const Dataset& data,
                                            std::span<const size_t> rows,
                                            const CostMatrix& costs,
                                            const TreeParams& params) {
  return FindBestSplit(data, rows, CostCriterion(costs), params);
}

Tree FitCortex(const Dataset& train, const CostMatrix& costs,
               const TreeParams& params) {
  if (train.num_classes() != costs.num_classes()) {
    ThrowConfig("dataset has " + std::to_string(train.num_classes()) +
                " classes but the cost matrix has " +
                std::to_string(costs.num_classes()));
  }
  return GrowTree(TreeKind::kCortex, train, CostCriterion(costs), params);
}

}  // namespace cortex
