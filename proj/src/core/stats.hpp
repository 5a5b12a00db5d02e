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

// Nonparametric comparison of methods over repeated runs.

#ifndef CORTEX_CORE_STATS_HPP_
#define CORTEX_CORE_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cortex::stats {

enum class Direction { kHigherBetter, kLowerBetter };

// Ascending ranks starting at 1; tied values share the average rank.
std::vector<double> AverageRanks(std::span<const double> values);

// Ranks where 1 is the best value under `direction`.
std::vector<double> DirectedRanks(std::span<const double> values, Direction direction);

// blocks[i][j] = value of method j in block (run) i.
struct RankTable {
  std::vector<std::string> methods;
  std::vector<std::vector<double>> blocks;
  Direction direction = Direction::kHigherBetter;
};

struct FriedmanResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  size_t blocks = 0;
  size_t methods = 0;
  std::vector<double> mean_ranks;  // direction-adjusted, 1 = best
  // Permutation p-value when the null distribution is small enough to
  // compute exactly. Decisions use the chi-square p-value.
  std::optional<double> exact_p_value;
};

// Chi-square approximation with k - 1 degrees of freedom and the usual
// correction for within-block ties. A table that is tied in every block has
// statistic 0 and p = 1.
FriedmanResult Friedman(const RankTable& table, double alpha = 0.05);

// Exact permutation p-value P(stat >= observed) under independent uniform
// permutation of each block's ranks, or nullopt when too large to enumerate.
std::optional<double> FriedmanExactPValue(const RankTable& table);

struct WilcoxonResult {
  double w = 0.0;  // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  size_t n = 0;          // pairs
  size_t n_nonzero = 0;  // pairs left after dropping zero differences
  double p_value = 1.0;
  bool exact = true;
  bool reject = false;
  double alpha = 0.05;
};

inline constexpr size_t kWilcoxonExactLimit = 25;
inline constexpr size_t kWilcoxonMinPairs = 5;

// Two-sided signed-rank test on a - b. Zero differences are dropped. Exact
// null distribution up to kWilcoxonExactLimit nonzero pairs, otherwise the
// normal approximation with tie and continuity corrections.
WilcoxonResult Wilcoxon(std::span<const double> a, std::span<const double> b,
                        double alpha = 0.05);

// Both tails of the signed-rank null for |d| ranks `ranks`, evaluated at
// min(W+, W-) = w.
double WilcoxonExactPValue(std::span<const double> ranks, double w);
double WilcoxonNormalPValue(std::span<const double> ranks, double w);

// per_method[j][r] = value of method j in run r. Returns one value per method
// in [0, 1]: 0 when the method is ranked first in every run, 1 when last.
std::vector<double> RankAndNormalize(const std::vector<std::vector<double>>& per_method,
                                     Direction direction);

}  // namespace cortex::stats

#endif  // CORTEX_CORE_STATS_HPP_
