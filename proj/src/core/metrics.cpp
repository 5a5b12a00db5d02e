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

#include "core/metrics.hpp"

#include "core/error.hpp"

namespace cortex {

namespace {

void CheckSamples(const Dataset& samples) {
  if (samples.num_rows() == 0) ThrowData("empty sample set");
}

double AgreementWith(const RuleSet& rules, const Dataset& samples,
                     std::span<const ClassIndex> reference, const char* what) {
  CheckSamples(samples);
  if (reference.size() != samples.num_rows()) {
    ThrowData(std::string(what) + " vector has length " +
              std::to_string(reference.size()) + " for " +
              std::to_string(samples.num_rows()) + " samples");
  }
  size_t agree = 0;
  for (size_t i = 0; i < samples.num_rows(); ++i) {
    const auto y = ApplyRules(rules, samples.row(i));
    if (y && *y == reference[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(samples.num_rows());
}

}  // namespace

double Completeness(const RuleSet& rules, const Dataset& samples) {
  CheckSamples(samples);
  size_t covered = 0;
  for (size_t i = 0; i < samples.num_rows(); ++i) {
    if (ApplyRules(rules, samples.row(i))) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(samples.num_rows());
}

double Correctness(const RuleSet& rules, const Dataset& samples,
                   std::span<const ClassIndex> true_labels) {
  return AgreementWith(rules, samples, true_labels, "true label");
}

double Fidelity(const RuleSet& rules, const Dataset& samples,
                std::span<const ClassIndex> blackbox_labels) {
  return AgreementWith(rules, samples, blackbox_labels, "black-box label");
}

double Robustness(const RuleSet& rules, const Dataset& samples, double sigma,
                  std::span<const double> feature_scales, uint64_t seed) {
  CheckSamples(samples);
  const Dataset noisy = Perturb(samples, sigma, feature_scales, seed);
  size_t unchanged = 0;
  for (size_t i = 0; i < samples.num_rows(); ++i) {
    if (ApplyRules(rules, samples.row(i)) == ApplyRules(rules, noisy.row(i))) {
      ++unchanged;
    }
  }
  return static_cast<double>(unchanged) / static_cast<double>(samples.num_rows());
}

}  // namespace cortex
