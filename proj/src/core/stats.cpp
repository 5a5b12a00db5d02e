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

#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "core/error.hpp"

namespace cortex::stats {

std::vector<double> AverageRanks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::vector<double> DirectedRanks(std::span<const double> values, Direction direction) {
  if (direction == Direction::kLowerBetter) return AverageRanks(values);
  std::vector<double> negated(values.size());
  std::transform(values.begin(), values.end(), negated.begin(),
                 [](double v) { return -v; });
  return AverageRanks(negated);
}

namespace {

void CheckTable(const RankTable& table) {
  const size_t n = table.blocks.size();
  const size_t k = table.methods.size();
  if (k < 2) ThrowConfig("Friedman test needs at least 2 methods");
  if (n < 2) ThrowConfig("Friedman test needs at least 2 blocks");
  for (const auto& block : table.blocks) {
    if (block.size() != k) ThrowData("Friedman table has a ragged block");
    for (double v : block) {
      if (!std::isfinite(v)) ThrowData("Friedman table has a missing value");
    }
  }
}

// sum_t (t^3 - t) over groups of tied values.
double TieTerm(std::span<const double> ranks) {
  std::map<double, size_t> groups;
  for (double r : ranks) ++groups[r];
  double term = 0.0;
  for (const auto& [rank, t] : groups) {
    const double td = static_cast<double>(t);
    term += td * td * td - td;
  }
  return term;
}

struct FriedmanTerms {
  std::vector<std::vector<double>> ranks;
  double correction = 1.0;
};

FriedmanTerms ComputeTerms(const RankTable& table) {
  const size_t k = table.methods.size();
  const double n = static_cast<double>(table.blocks.size());
  const double kd = static_cast<double>(k);
  FriedmanTerms terms;
  double ties = 0.0;
  for (const auto& block : table.blocks) {
    terms.ranks.push_back(DirectedRanks(block, table.direction));
    ties += TieTerm(terms.ranks.back());
  }
  terms.correction = 1.0 - ties / (n * (kd * kd * kd - kd));
  return terms;
}

double StatisticFromSumSquares(double sum_sq, double n, double k, double correction) {
  const double raw = 12.0 / (n * k * (k + 1.0)) * sum_sq - 3.0 * n * (k + 1.0);
  return std::max(0.0, raw / correction);
}

}  // namespace

FriedmanResult Friedman(const RankTable& table, double alpha) {
  CheckTable(table);
  const size_t k = table.methods.size();
  const size_t n = table.blocks.size();
  const auto terms = ComputeTerms(table);

  FriedmanResult result;
  result.alpha = alpha;
  result.blocks = n;
  result.methods = k;
  std::vector<double> rank_sums(k, 0.0);
  for (const auto& r : terms.ranks) {
    for (size_t j = 0; j < k; ++j) rank_sums[j] += r[j];
  }
  result.mean_ranks.resize(k);
  for (size_t j = 0; j < k; ++j) {
    result.mean_ranks[j] = rank_sums[j] / static_cast<double>(n);
  }

  // Every block entirely tied: no information, the statistic is 0.
  if (terms.correction <= 1e-12) {
    result.statistic = 0.0;
    result.p_value = 1.0;
  } else {
    double sum_sq = 0.0;
    for (double r : rank_sums) sum_sq += r * r;
    result.statistic = StatisticFromSumSquares(sum_sq, static_cast<double>(n),
                                               static_cast<double>(k), terms.correction);
    boost::math::chi_squared dist(static_cast<double>(k - 1));
    result.p_value = result.statistic <= 0.0
                         ? 1.0
                         : boost::math::cdf(boost::math::complement(dist, result.statistic));
  }
  result.reject = result.p_value < alpha;
  result.exact_p_value = FriedmanExactPValue(table);
  return result;
}

std::optional<double> FriedmanExactPValue(const RankTable& table) {
  CheckTable(table);
  constexpr size_t kMaxMethods = 7;
  constexpr size_t kMaxStates = 200000;
  const size_t k = table.methods.size();
  if (k > kMaxMethods) return std::nullopt;
  const auto terms = ComputeTerms(table);
  if (terms.correction <= 1e-12) return 1.0;

  // Doubled ranks are integers, so sums of squares compare exactly.
  using Sums = std::vector<int64_t>;
  std::map<Sums, double> dist{{Sums(k, 0), 1.0}};
  Sums observed(k, 0);
  for (const auto& ranks : terms.ranks) {
    std::vector<int64_t> doubled(k);
    for (size_t j = 0; j < k; ++j) {
      doubled[j] = std::llround(2.0 * ranks[j]);
      observed[j] += doubled[j];
    }
    std::sort(doubled.begin(), doubled.end());
    std::vector<std::vector<int64_t>> arrangements;
    do {
      arrangements.push_back(doubled);
    } while (std::next_permutation(doubled.begin(), doubled.end()));
    const double weight = 1.0 / static_cast<double>(arrangements.size());

    std::map<Sums, double> next;
    for (const auto& [sums, prob] : dist) {
      for (const auto& arr : arrangements) {
        Sums s = sums;
        for (size_t j = 0; j < k; ++j) s[j] += arr[j];
        next[std::move(s)] += prob * weight;
      }
      if (next.size() > kMaxStates) return std::nullopt;
    }
    dist = std::move(next);
  }
  auto sum_sq = [](const Sums& s) {
    int64_t total = 0;
    for (int64_t v : s) total += v * v;
    return total;
  };
  const int64_t threshold = sum_sq(observed);
  double p = 0.0;
  for (const auto& [sums, prob] : dist) {
    if (sum_sq(sums) >= threshold) p += prob;
  }
  return std::min(1.0, p);
}

namespace {

std::vector<int64_t> DoubledRanks(std::span<const double> ranks) {
  std::vector<int64_t> out(ranks.size());
  for (size_t i = 0; i < ranks.size(); ++i) out[i] = std::llround(2.0 * ranks[i]);
  return out;
}

}  // namespace

double WilcoxonExactPValue(std::span<const double> ranks, double w) {
  const size_t n = ranks.size();
  if (n == 0) return 1.0;
  const auto doubled = DoubledRanks(ranks);
  const int64_t total = std::accumulate(doubled.begin(), doubled.end(), int64_t{0});
  // ways[s] = number of sign assignments whose doubled W+ equals s.
  std::vector<double> ways(static_cast<size_t>(total) + 1, 0.0);
  ways[0] = 1.0;
  int64_t reach = 0;
  for (int64_t r : doubled) {
    for (int64_t s = reach; s >= 0; --s) {
      if (ways[static_cast<size_t>(s)] != 0.0) {
        ways[static_cast<size_t>(s + r)] += ways[static_cast<size_t>(s)];
      }
    }
    reach += r;
  }
  const int64_t limit = std::llround(2.0 * w);
  double tail = 0.0;
  for (int64_t s = 0; s <= std::min(limit, total); ++s) tail += ways[static_cast<size_t>(s)];
  const double p = 2.0 * tail / std::ldexp(1.0, static_cast<int>(n));
  return std::min(1.0, p);
}

double WilcoxonNormalPValue(std::span<const double> ranks, double w) {
  const double n = static_cast<double>(ranks.size());
  if (ranks.empty()) return 1.0;
  const double mean = n * (n + 1.0) / 4.0;
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - TieTerm(ranks) / 48.0;
  if (var <= 0.0) return 1.0;
  const double z = std::max(0.0, std::abs(w - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

WilcoxonResult Wilcoxon(std::span<const double> a, std::span<const double> b,
                        double alpha) {
  if (a.size() != b.size()) {
    ThrowData("Wilcoxon test needs paired samples of equal length, got " +
              std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  if (a.size() < kWilcoxonMinPairs) {
    ThrowConfig("Wilcoxon test needs at least " + std::to_string(kWilcoxonMinPairs) +
                " pairs, got " + std::to_string(a.size()));
  }
  WilcoxonResult result;
  result.alpha = alpha;
  result.n = a.size();
  std::vector<double> diffs;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      ThrowData("Wilcoxon test input is not finite");
    }
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  result.n_nonzero = diffs.size();
  if (diffs.empty()) return result;

  std::vector<double> magnitudes(diffs.size());
  std::transform(diffs.begin(), diffs.end(), magnitudes.begin(),
                 [](double d) { return std::abs(d); });
  const auto ranks = AverageRanks(magnitudes);
  for (size_t i = 0; i < diffs.size(); ++i) {
    (diffs[i] > 0 ? result.w_plus : result.w_minus) += ranks[i];
  }
  result.w = std::min(result.w_plus, result.w_minus);
  result.exact = diffs.size() <= kWilcoxonExactLimit;
  result.p_value = result.exact ? WilcoxonExactPValue(ranks, result.w)
                                : WilcoxonNormalPValue(ranks, result.w);
  result.reject = result.p_value < alpha;
  return result;
}

std::vector<double> RankAndNormalize(const std::vector<std::vector<double>>& per_method,
                                     Direction direction) {
  const size_t k = per_method.size();
  if (k < 2) ThrowConfig("ranking needs at least 2 methods");
  const size_t n = per_method.front().size();
  if (n == 0) ThrowConfig("ranking needs at least 1 run");
  for (const auto& m : per_method) {
    if (m.size() != n) ThrowData("methods have different run counts");
  }
  std::vector<double> sums(k, 0.0);
  std::vector<double> run(k);
  for (size_t r = 0; r < n; ++r) {
    for (size_t j = 0; j < k; ++j) run[j] = per_method[j][r];
    const auto ranks = DirectedRanks(run, direction);
    for (size_t j = 0; j < k; ++j) sums[j] += ranks[j];
  }
  // Achievable range of a rank sum: n (always first) .. n * k (always last).
  const double lo = static_cast<double>(n);
  const double hi = static_cast<double>(n * k);
  std::vector<double> out(k);
  for (size_t j = 0; j < k; ++j) out[j] = (sums[j] - lo) / (hi - lo);
  return out;
}

}  // namespace cortex::stats
