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

// IF-THEN rules read off root-to-leaf paths.

#ifndef CORTEX_CORE_RULES_HPP_
#define CORTEX_CORE_RULES_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/tree.hpp"

namespace cortex {

enum class Comparison { kLessEqual, kGreater };

struct Antecedent {
  size_t feature = 0;
  Comparison op = Comparison::kLessEqual;
  double threshold = 0.0;

  bool Holds(std::span<const double> x) const {
    return op == Comparison::kLessEqual ? x[feature] <= threshold
                                        : x[feature] > threshold;
  }
  bool operator==(const Antecedent&) const = default;
};

struct Rule {
  std::vector<Antecedent> antecedents;  // simplified
  ClassIndex consequent = 0;
  int leaf = -1;             // node id in the source tree, -1 if imported
  size_t raw_length = 0;     // path conditions before simplification

  bool Fires(std::span<const double> x) const;
};

struct RuleSet {
  std::vector<Rule> rules;
  std::shared_ptr<const FeatureSchema> schema;
};

// Per feature keeps the tightest > bound and the tightest <= bound, ordered
// by feature index with > before <=. Throws Error(kInternal) when the bounds
// are contradictory.
std::vector<Antecedent> Simplify(std::span<const Antecedent> antecedents);

// One rule per leaf in depth-first, left-to-right order.
RuleSet ExtractRules(const Tree& tree);

// Consequent of the first firing rule, if any.
std::optional<ClassIndex> ApplyRules(const RuleSet& rules, std::span<const double> x);

struct RuleSetSize {
  size_t num_rules = 0;
  double average_length = 0.0;      // simplified antecedents
  double average_raw_length = 0.0;  // path conditions
};

RuleSetSize SizeMetrics(const RuleSet& rules);

// `IF (a > 1.5) AND (b <= 2) THEN class = good`, one rule per line. One-hot
// features are shown as `source = category` / `source != category`.
std::string RenderRule(const Rule& rule, const FeatureSchema& schema);
std::string RulesToText(const RuleSet& rules);

// {"rules":[{"antecedents":[{"feature":..,"op":"<=","threshold":..}],
//   "class":..,"leaf":..,"raw_length":..}]}
std::string RulesToJson(const RuleSet& rules);
RuleSet RulesFromJson(std::string_view json, std::shared_ptr<const FeatureSchema> schema);

}  // namespace cortex

#endif  // CORTEX_CORE_RULES_HPP_
