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

// Agreement and robustness scores of a rule set. All denominators are the
// full sample count: a sample no rule covers counts against correctness and
// fidelity.

#ifndef CORTEX_CORE_METRICS_HPP_
#define CORTEX_CORE_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>

#include "core/dataset.hpp"
#include "core/rules.hpp"

namespace cortex {

double Completeness(const RuleSet& rules, const Dataset& samples);
double Correctness(const RuleSet& rules, const Dataset& samples,
                   std::span<const ClassIndex> true_labels);
double Fidelity(const RuleSet& rules, const Dataset& samples,
                std::span<const ClassIndex> blackbox_labels);
// Fraction of samples whose rule output (including "no rule fires") is the
// same before and after Perturb(samples, sigma, feature_scales, seed).
double Robustness(const RuleSet& rules, const Dataset& samples, double sigma,
                  std::span<const double> feature_scales, uint64_t seed);

struct MetricRecord {
  std::string method;
  std::string dataset;
  size_t run = 0;
  uint64_t seed = 0;
  double sigma = 0.0;
  double completeness = 0.0;
  double correctness = 0.0;
  double fidelity = 0.0;
  double robustness = 0.0;
  size_t num_rules = 0;
  double average_rule_length = 0.0;
  double average_raw_rule_length = 0.0;
};

}  // namespace cortex

#endif  // CORTEX_CORE_METRICS_HPP_
