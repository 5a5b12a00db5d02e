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

// Multi-class cost-sensitive tree induction.
//
// A node holding counts N_i is labeled with the class k minimizing
//   cost_k = sum_i N_i * C[i][k],
// and splits are chosen to maximize the reduction of that least label cost.
// Leaves also carry cost-sensitive probabilities
//   p_k = (1 - cost_k / S) / (K - 1),   S = sum_k cost_k,
// which sum to one and peak at the least costly class. When S = 0 every
// label is free and p is uniform.
//
// Note for users comparing against other cost-sensitive tree codes: the
// published probability formula normalizes by a sum of the very quantity it
// defines. The form above is the non-circular reading that keeps the
// "highest probability == least cost" property.

#ifndef CORTEX_CORE_CORTEX_TREE_HPP_
#define CORTEX_CORE_CORTEX_TREE_HPP_

#include <span>
#include <vector>

#include "core/cost_matrix.hpp"
#include "core/dataset.hpp"
#include "core/tree.hpp"

namespace cortex {

double NodeCost(std::span<const size_t> counts, const CostMatrix& costs,
                ClassIndex label);

struct NodeLabel {
  ClassIndex label = 0;
  double cost = 0.0;
};

// Least costly class; ties go to the lowest index. Throws on an empty node.
NodeLabel LabelNode(std::span<const size_t> counts, const CostMatrix& costs);

std::vector<double> SoftProbabilities(std::span<const size_t> counts,
                                      const CostMatrix& costs);

class CostCriterion final : public SplitCriterion {
 public:
  explicit CostCriterion(const CostMatrix& costs) : costs_(costs) {}
  double Score(std::span<const size_t> counts) const override;
  LeafLabel Label(std::span<const size_t> counts) const override;

 private:
  const CostMatrix& costs_;
};

// Equivalent to FindBestSplit with a CostCriterion: gain is the parent's
// least label cost minus the children's.
std::optional<SplitCandidate> BestCostSplit(const Dataset& data,
                                            std::span<const size_t> rows,
                                            const CostMatrix& costs,
                                            const TreeParams& params);

Tree FitCortex(const Dataset& train, const CostMatrix& costs,
               const TreeParams& params = {});

}  // namespace cortex

#endif  // CORTEX_CORE_CORTEX_TREE_HPP_
