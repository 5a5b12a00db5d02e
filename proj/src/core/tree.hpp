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

// Binary threshold trees shared by the cost-sensitive learner and the
// class-weighted Gini baseline, plus the greedy growing machinery both use.
//
// A learner plugs in a SplitCriterion. Node scores are extensive (they scale
// with the number of samples), so the gain of a split is always
//   score(parent) - score(left) - score(right)
// and a node is split only when the best gain exceeds TreeParams::min_gain.

#ifndef CORTEX_CORE_TREE_HPP_
#define CORTEX_CORE_TREE_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/dataset.hpp"

namespace cortex {

struct TreeParams {
  int max_depth = 20;
  size_t min_samples_leaf = 1;
  // Strictly positive so zero-gain splits never recurse.
  double min_gain = 1e-12;
  // Cap on candidate thresholds per feature and node; 0 = every midpoint.
  size_t max_thresholds = 0;
};

void CheckParams(const TreeParams& params);

// x[feature] <= threshold goes left.
struct SplitRule {
  size_t feature = 0;
  double threshold = 0.0;
};

struct TreeNode {
  std::optional<SplitRule> split;
  int left = -1;
  int right = -1;
  int depth = 0;
  std::vector<size_t> counts;
  ClassIndex label = 0;
  std::vector<double> probabilities;

  bool is_leaf() const { return !split.has_value(); }
};

enum class TreeKind { kCortex, kWeightedGini };

struct LeafLabel {
  ClassIndex label = 0;
  std::vector<double> probabilities;
};

class SplitCriterion {
 public:
  virtual ~SplitCriterion() = default;
  // Lower is better.
  virtual double Score(std::span<const size_t> counts) const = 0;
  virtual LeafLabel Label(std::span<const size_t> counts) const = 0;
};

struct Prediction {
  ClassIndex label = 0;
  std::span<const double> probabilities;
};

class Tree {
 public:
  // Nodes are in depth-first, left-before-right order; nodes[0] is the root.
  Tree(TreeKind kind, std::shared_ptr<const FeatureSchema> schema,
       std::vector<TreeNode> nodes, TreeParams params);

  TreeKind kind() const { return kind_; }
  const FeatureSchema& schema() const { return *schema_; }
  const std::shared_ptr<const FeatureSchema>& schema_ptr() const {
    return schema_;
  }
  const TreeParams& params() const { return params_; }
  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }

  size_t LeafIndex(std::span<const double> x) const;
  Prediction Predict(std::span<const double> x) const;
  std::vector<ClassIndex> PredictAll(const Dataset& data) const;

  size_t num_leaves() const;
  int depth() const;

 private:
  TreeKind kind_;
  std::shared_ptr<const FeatureSchema> schema_;
  std::vector<TreeNode> nodes_;
  TreeParams params_;
};

struct SplitCandidate {
  SplitRule rule;
  double gain = 0.0;
};

// Scans every feature for midpoints between consecutive distinct values of
// `rows` and returns the best split whose gain exceeds params.min_gain.
// Ties go to the lowest feature index, then the lowest threshold.
std::optional<SplitCandidate> FindBestSplit(const Dataset& data,
                                            std::span<const size_t> rows,
                                            const SplitCriterion& criterion,
                                            const TreeParams& params);

Tree GrowTree(TreeKind kind, const Dataset& train, const SplitCriterion& criterion,
              const TreeParams& params);

// Indented text, one node per line:
//   feature_name <= threshold
//     class=<name> counts=[...] p=[...]
std::string TreeToText(const Tree& tree);
Tree TreeFromText(std::string_view text, std::shared_ptr<const FeatureSchema> schema,
                  TreeKind kind = TreeKind::kCortex);

}  // namespace cortex

#endif  // CORTEX_CORE_TREE_HPP_
