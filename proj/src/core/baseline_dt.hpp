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

// Class-weighted Gini tree ("balanced" class weights), used as the baseline
// surrogate. Shares threshold enumeration, stopping and tie-breaking with the
// cost-sensitive learner; only the criterion differs.

#ifndef CORTEX_CORE_BASELINE_DT_HPP_
#define CORTEX_CORE_BASELINE_DT_HPP_

#include <span>
#include <vector>

#include "core/dataset.hpp"
#include "core/tree.hpp"

namespace cortex {

// w_i = n / (K * N_i).
std::vector<double> ClassWeights(std::span<const size_t> counts);

// 1 - sum_i q_i^2 with q_i = w_i N_i / sum_j w_j N_j. Zero for empty nodes.
double WeightedGini(std::span<const size_t> counts, std::span<const double> weights);

class WeightedGiniCriterion final : public SplitCriterion {
 public:
  explicit WeightedGiniCriterion(std::vector<double> weights)
      : weights_(std::move(weights)) {}
  // Total node weight times weighted Gini.
  double Score(std::span<const size_t> counts) const override;
  // argmax_i w_i N_i, probabilities = weighted class frequencies.
  LeafLabel Label(std::span<const size_t> counts) const override;

 private:
  std::vector<double> weights_;
};

Tree FitWeighted(const Dataset& train, const TreeParams& params = {});

}  // namespace cortex

#endif  // CORTEX_CORE_BASELINE_DT_HPP_
