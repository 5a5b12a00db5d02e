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

#include <numeric>

#include "core/error.hpp"

namespace cortex {

std::vector<double> ClassWeights(std::span<const size_t> counts) {
  const size_t k = counts.size();
  if (k == 0) ThrowData("no classes");
  const double n =
      static_cast<double>(std::accumulate(counts.begin(), counts.end(), size_t{0}));
  std::vector<double> w(k);
  for (size_t i = 0; i < k; ++i) {
    if (counts[i] == 0) {
      ThrowData("empty class: class " + std::to_string(i) + " has no samples");
    }
    w[i] = n / (static_cast<double>(k) * static_cast<double>(counts[i]));
  }
  return w;
}

namespace {

double WeightedTotal(std::span<const size_t> counts, std::span<const double> w) {
  double total = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    total += w[i] * static_cast<double>(counts[i]);
  }
  return total;
}

}  // namespace

double WeightedGini(std::span<const size_t> counts, std::span<const double> weights) {
  if (counts.size() != weights.size()) ThrowInternal("weight vector length mismatch");
  const double total = WeightedTotal(counts, weights);
  if (total <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    const double q = weights[i] * static_cast<double>(counts[i]) / total;
    sum_sq += q * q;
  }
  return 1.0 - sum_sq;
}

double WeightedGiniCriterion::Score(std::span<const size_t> counts) const {
  return WeightedTotal(counts, weights_) * WeightedGini(counts, weights_);
}

LeafLabel WeightedGiniCriterion::Label(std::span<const size_t> counts) const {
  const double total = WeightedTotal(counts, weights_);
  if (total <= 0.0) ThrowInternal("cannot label an empty node");
  LeafLabel leaf;
  leaf.probabilities.resize(counts.size());
  // Balanced weights make class masses equal in exact arithmetic; a relative
  // tolerance keeps such ties on the lowest index.
  constexpr double kTieTolerance = 1e-12;
  double best = -1.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    const double mass = weights_[i] * static_cast<double>(counts[i]);
    leaf.probabilities[i] = mass / total;
    if (mass > best + kTieTolerance * total) {
      best = mass;
      leaf.label = static_cast<ClassIndex>(i);
    }
  }
  return leaf;
}

Tree FitWeighted(const Dataset& train, const TreeParams& params) {
  // Classes absent from the training labels get weight 0; the balanced
  // formula runs over the classes that are present.
  const auto counts = train.class_counts();
  std::vector<size_t> present;
  for (size_t c : counts) {
    if (c > 0) present.push_back(c);
  }
  std::vector<double> weights(counts.size(), 0.0);
  if (present.size() == counts.size()) {
    weights = ClassWeights(counts);
  } else if (present.size() == 1) {
    for (size_t i = 0; i < counts.size(); ++i) weights[i] = counts[i] > 0 ? 1.0 : 0.0;
  } else {
    const auto w = ClassWeights(present);
    for (size_t i = 0, j = 0; i < counts.size(); ++i) {
      if (counts[i] > 0) weights[i] = w[j++];
    }
  }
  WeightedGiniCriterion criterion(std::move(weights));
  return GrowTree(TreeKind::kWeightedGini, train, criterion, params);
}

}  // namespace cortex
