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

// The surrogate-explanation experiment: repeated randomized splits, black-box
// labeling of the held-out portion, surrogate fitting, rule extraction,
// scoring and the final statistical comparison.

#ifndef CORTEX_CORE_EXPERIMENT_HPP_
#define CORTEX_CORE_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/blackbox.hpp"
#include "core/metrics.hpp"
#include "core/stats.hpp"
#include "core/tree.hpp"
#include "json.hpp"

namespace cortex {

struct RunConfig {
  std::string data_path;
  std::string target;
  std::string dataset_name;  // defaults to the data file stem
  PredictorSource predictor = PredictionFile{};
  std::string cost_matrix = "default";  // "default" or a CSV path
  double train_fraction = 0.7;
  size_t repeats = 100;
  uint64_t seed = 0;
  double noise_sigma = 0.1;
  bool stratified = true;
  TreeParams cortex_params;
  TreeParams dt_params;
  std::vector<std::string> methods = {"cortex", "dt"};
  std::string out_dir;
  size_t parallel = 1;
  std::vector<std::string> formats = {"json", "csv", "text"};
  // Fraction of the surrogate portion held back from fitting and used for
  // scoring instead. 0 scores on the fit set itself.
  double surrogate_holdout = 0.0;
  double alpha = 0.05;
};

void ValidateConfig(const RunConfig& config);

// Keys mirror the CLI flags: data, target, predictions, prediction_column,
// oracle_cmd, oracle_cwd, oracle_timeout, cost_matrix, train_fraction,
// repeats, seed, noise_sigma, stratified, max_depth, min_leaf, min_gain,
// max_thresholds, cortex{...}, dt{...}, methods, out, parallel, format,
// surrogate_holdout, alpha, dataset_name. Keys absent from `doc` keep the
// values already in `base`.
RunConfig ConfigFromJson(const nlohmann::json& doc, RunConfig base = {});
nlohmann::ordered_json ConfigToJson(const RunConfig& config);

inline constexpr std::array<const char*, 6> kMetricNames = {
    "completeness", "correctness", "fidelity",
    "robustness",   "num_rules",   "avg_rule_length"};

stats::Direction MetricDirection(size_t metric);
double MetricValue(const MetricRecord& record, size_t metric);

struct MetricSummary {
  std::string metric;
  std::string method;
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation, 0 for a single run
};

struct FriedmanEntry {
  std::string metric;
  std::optional<stats::FriedmanResult> result;  // empty: insufficient blocks
};

struct WilcoxonEntry {
  std::string metric;
  std::string method_a;
  std::string method_b;
  std::optional<stats::WilcoxonResult> result;  // empty: insufficient blocks
};

struct RankEntry {
  std::string metric;
  std::vector<double> normalized;  // per method, config order
};

struct RunRules {
  std::string method;
  size_t run = 0;
  std::string text;
};

struct EvaluationReport {
  RunConfig config;
  std::string dataset;
  std::string source;
  std::vector<std::string> class_names;
  std::vector<std::string> cost_matrix_warnings;
  std::vector<MetricRecord> records;  // run-major, methods in config order
  std::vector<MetricSummary> summary;
  std::vector<FriedmanEntry> friedman;
  std::vector<WilcoxonEntry> wilcoxon;
  std::vector<RankEntry> ranks;        // empty with a single method
  std::vector<double> overall_rank;    // mean of the per-metric ranks
  std::vector<RunRules> rules;
};

// Seed for the robustness noise of a run, derived from the run seed.
uint64_t NoiseSeed(uint64_t run_seed);

EvaluationReport RunExperiment(const RunConfig& config);

// Aggregates records into summary, tests and ranks. Exposed so the
// statistics can be recomputed for hand-built record sets.
void Summarize(EvaluationReport& report);

nlohmann::ordered_json ReportToJson(const EvaluationReport& report);
std::string ReportToCsv(const EvaluationReport& report);
std::string ReportToText(const EvaluationReport& report);

// Writes report.json / report.csv / report.txt (per `formats`) and
// rules/<method>_run<r>.txt into `out_dir`, creating it if needed.
void WriteReport(const EvaluationReport& report, const std::string& out_dir,
                 const std::vector<std::string>& formats);

}  // namespace cortex

#endif  // CORTEX_CORE_EXPERIMENT_HPP_
