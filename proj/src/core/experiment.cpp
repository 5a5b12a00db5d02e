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

#include "core/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "core/baseline_dt.hpp"
#include "core/cortex_tree.hpp"
#include "core/cost_matrix.hpp"
#include "core/error.hpp"
#include "core/rules.hpp"

namespace cortex {

void ValidateConfig(const RunConfig& c) {
  if (c.data_path.empty()) ThrowConfig("no data file given");
  if (c.target.empty()) ThrowConfig("no target column given");
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) {
    ThrowConfig("train fraction must lie in (0, 1)");
  }
  if (c.repeats < 1) ThrowConfig("repeats must be >= 1");
  if (!(c.noise_sigma >= 0.0) || !std::isfinite(c.noise_sigma)) {
    ThrowConfig("noise sigma must be finite and >= 0");
  }
  if (!(c.surrogate_holdout >= 0.0 && c.surrogate_holdout < 1.0)) {
    ThrowConfig("surrogate holdout must lie in [0, 1)");
  }
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) ThrowConfig("alpha must lie in (0, 1)");
  if (c.parallel < 1) ThrowConfig("parallel must be >= 1");
  if (c.methods.empty()) ThrowConfig("no methods selected");
  for (size_t i = 0; i < c.methods.size(); ++i) {
    if (c.methods[i] != "cortex" && c.methods[i] != "dt") {
      ThrowConfig("unknown method '" + c.methods[i] + "' (expected cortex or dt)");
    }
    for (size_t j = 0; j < i; ++j) {
      if (c.methods[j] == c.methods[i]) ThrowConfig("method listed twice: " + c.methods[i]);
    }
  }
  for (const auto& f : c.formats) {
    if (f != "json" && f != "csv" && f != "text") {
      ThrowConfig("unknown report format '" + f + "' (expected json, csv or text)");
    }
  }
  if (const auto* file = std::get_if<PredictionFile>(&c.predictor)) {
    if (file->path.empty()) ThrowConfig("either a prediction file or an oracle command is required");
  } else {
    const auto& oracle = std::get<SubprocessOracle>(c.predictor);
    if (oracle.command.empty()) ThrowConfig("empty oracle command");
    if (!(oracle.timeout_seconds > 0.0)) ThrowConfig("oracle timeout must be positive");
  }
  CheckParams(c.cortex_params);
  CheckParams(c.dt_params);
}

namespace {

template <typename T>
T Get(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    ThrowConfig(std::string("config key '") + key + "' has the wrong type");
  }
}

std::vector<std::string> StringList(const nlohmann::json& doc, const char* key,
                                    std::vector<std::string> fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (v.is_string()) {
    std::vector<std::string> out;
    std::string item;
    for (char c : v.get<std::string>() + ",") {
      if (c == ',') {
        if (!item.empty()) out.push_back(item);
        item.clear();
      } else if (c != ' ') {
        item.push_back(c);
      }
    }
    return out;
  }
  return Get<std::vector<std::string>>(doc, key, fallback);
}

TreeParams ParamsFromJson(const nlohmann::json& doc, TreeParams p) {
  p.max_depth = Get<int>(doc, "max_depth", p.max_depth);
  p.min_samples_leaf = Get<size_t>(doc, "min_leaf", p.min_samples_leaf);
  p.min_gain = Get<double>(doc, "min_gain", p.min_gain);
  p.max_thresholds = Get<size_t>(doc, "max_thresholds", p.max_thresholds);
  return p;
}

nlohmann::ordered_json ParamsToJson(const TreeParams& p) {
  return {{"max_depth", p.max_depth},
          {"min_leaf", p.min_samples_leaf},
          {"min_gain", p.min_gain},
          {"max_thresholds", p.max_thresholds}};
}

}  // namespace

RunConfig ConfigFromJson(const nlohmann::json& doc, RunConfig c) {
  if (!doc.is_object()) ThrowConfig("config must be a JSON object");
  c.data_path = Get(doc, "data", c.data_path);
  c.target = Get(doc, "target", c.target);
  c.dataset_name = Get(doc, "dataset_name", c.dataset_name);
  if (doc.contains("predictions") && doc.contains("oracle_cmd")) {
    ThrowConfig("give either predictions or oracle_cmd, not both");
  }
  if (doc.contains("predictions")) {
    PredictionFile file;
    if (const auto* old = std::get_if<PredictionFile>(&c.predictor)) file = *old;
    file.path = Get<std::string>(doc, "predictions", "");
    file.column = Get(doc, "prediction_column", file.column);
    c.predictor = file;
  } else if (doc.contains("oracle_cmd")) {
    SubprocessOracle oracle;
    if (const auto* old = std::get_if<SubprocessOracle>(&c.predictor)) oracle = *old;
    oracle.command = Get<std::string>(doc, "oracle_cmd", "");
    c.predictor = oracle;
  }
  if (auto* file = std::get_if<PredictionFile>(&c.predictor)) {
    file->column = Get(doc, "prediction_column", file->column);
  } else {
    auto& oracle = std::get<SubprocessOracle>(c.predictor);
    oracle.working_directory = Get(doc, "oracle_cwd", oracle.working_directory);
    oracle.timeout_seconds = Get(doc, "oracle_timeout", oracle.timeout_seconds);
  }
  c.cost_matrix = Get(doc, "cost_matrix", c.cost_matrix);
  c.train_fraction = Get(doc, "train_fraction", c.train_fraction);
  c.repeats = Get(doc, "repeats", c.repeats);
  c.seed = Get(doc, "seed", c.seed);
  c.noise_sigma = Get(doc, "noise_sigma", c.noise_sigma);
  c.stratified = Get(doc, "stratified", c.stratified);
  // Shared tree settings first, then per-method overrides.
  c.cortex_params = ParamsFromJson(doc, c.cortex_params);
  c.dt_params = ParamsFromJson(doc, c.dt_params);
  if (doc.contains("cortex")) c.cortex_params = ParamsFromJson(doc.at("cortex"), c.cortex_params);
  if (doc.contains("dt")) c.dt_params = ParamsFromJson(doc.at("dt"), c.dt_params);
  c.methods = StringList(doc, "methods", c.methods);
  c.out_dir = Get(doc, "out", c.out_dir);
  c.parallel = Get(doc, "parallel", c.parallel);
  c.formats = StringList(doc, "format", c.formats);
  c.surrogate_holdout = Get(doc, "surrogate_holdout", c.surrogate_holdout);
  c.alpha = Get(doc, "alpha", c.alpha);
  return c;
}

nlohmann::ordered_json ConfigToJson(const RunConfig& c) {
  nlohmann::ordered_json doc;
  doc["data"] = c.data_path;
  doc["target"] = c.target;
  doc["dataset_name"] = c.dataset_name;
  if (const auto* file = std::get_if<PredictionFile>(&c.predictor)) {
    doc["predictions"] = file->path;
    doc["prediction_column"] = file->column;
  } else {
    const auto& oracle = std::get<SubprocessOracle>(c.predictor);
    doc["oracle_cmd"] = oracle.command;
    doc["oracle_cwd"] = oracle.working_directory;
    doc["oracle_timeout"] = oracle.timeout_seconds;
  }
  doc["cost_matrix"] = c.cost_matrix;
  doc["train_fraction"] = c.train_fraction;
  doc["repeats"] = c.repeats;
  doc["seed"] = c.seed;
  doc["noise_sigma"] = c.noise_sigma;
  doc["stratified"] = c.stratified;
  doc["cortex"] = ParamsToJson(c.cortex_params);
  doc["dt"] = ParamsToJson(c.dt_params);
  doc["methods"] = c.methods;
  doc["out"] = c.out_dir;
  doc["parallel"] = c.parallel;
  doc["format"] = c.formats;
  doc["surrogate_holdout"] = c.surrogate_holdout;
  doc["alpha"] = c.alpha;
  return doc;
}

stats::Direction MetricDirection(size_t metric) {
  return metric < 4 ? stats::Direction::kHigherBetter : stats::Direction::kLowerBetter;
}

double MetricValue(const MetricRecord& r, size_t metric) {
  switch (metric) {
    case 0: return r.completeness;
    case 1: return r.correctness;
    case 2: return r.fidelity;
    case 3: return r.robustness;
    case 4: return static_cast<double>(r.num_rules);
    case 5: return r.average_rule_length;
    default: ThrowInternal("metric index out of range");
  }
}

uint64_t NoiseSeed(uint64_t run_seed) {
  // splitmix64 finalizer
  uint64_t z = run_seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

struct RunOutcome {
  std::vector<MetricRecord> records;
  std::vector<RunRules> rules;
};

// Zero counts would make the default matrix undefined; absent classes get a
// pseudo-count of one. Their rows never contribute to a node cost.
CostMatrix DefaultMatrixForLabels(std::span<const size_t> counts) {
  std::vector<size_t> adjusted(counts.begin(), counts.end());
  for (auto& c : adjusted) c = std::max<size_t>(c, 1);
  return DefaultCostMatrix(adjusted);
}

RunOutcome RunOnce(const RunConfig& config, const Dataset& data,
                   const std::optional<CostMatrix>& fixed_costs,
                   const std::string& dataset_name, size_t run) {
  const uint64_t seed = config.seed + run;
  const auto [train, surrogate] =
      Split(data, config.train_fraction, seed, config.stratified);
  const auto blackbox = GetPredictions(config.predictor, surrogate);

  // Surrogates learn the black box on the held-out portion of the data.
  Dataset fit_set = surrogate.WithLabels(blackbox);
  Dataset eval_set = surrogate;
  std::vector<ClassIndex> eval_blackbox = blackbox;
  if (config.surrogate_holdout > 0.0) {
    const auto idx = SplitDataset(surrogate, 1.0 - config.surrogate_holdout,
                                  NoiseSeed(seed ^ 0x5bd1e995ULL), false);
    fit_set = surrogate.Subset(idx.train).WithLabels([&] {
      std::vector<ClassIndex> y;
      for (size_t i : idx.train) y.push_back(blackbox[i]);
      return y;
    }());
    eval_set = surrogate.Subset(idx.test);
    eval_blackbox.clear();
    for (size_t i : idx.test) eval_blackbox.push_back(blackbox[i]);
  }
  const auto scales = train.FeatureStdDev();

  RunOutcome outcome;
  for (const auto& method : config.methods) {
    std::optional<Tree> tree;
    if (method == "cortex") {
      const CostMatrix costs =
          fixed_costs ? *fixed_costs : DefaultMatrixForLabels(fit_set.class_counts());
      tree.emplace(FitCortex(fit_set, costs, config.cortex_params));
    } else {
      tree.emplace(FitWeighted(fit_set, config.dt_params));
    }
    const RuleSet rules = ExtractRules(*tree);
    const auto size = SizeMetrics(rules);

    MetricRecord record;
    record.method = method;
    record.dataset = dataset_name;
    record.run = run;
    record.seed = seed;
    record.sigma = config.noise_sigma;
    record.completeness = Completeness(rules, eval_set);
    record.correctness = Correctness(rules, eval_set, eval_set.labels());
    record.fidelity = Fidelity(rules, eval_set, eval_blackbox);
    record.robustness =
        Robustness(rules, eval_set, config.noise_sigma, scales, NoiseSeed(seed));
    record.num_rules = size.num_rules;
    record.average_rule_length = size.average_length;
    record.average_raw_rule_length = size.average_raw_length;
    outcome.records.push_back(record);
    outcome.rules.push_back({method, run, RulesToText(rules)});
  }
  return outcome;
}

}  // namespace

EvaluationReport RunExperiment(const RunConfig& config) {
  ValidateConfig(config);
  EvaluationReport report;
  report.config = config;
  report.dataset = config.dataset_name.empty()
                       ? std::filesystem::path(config.data_path).stem().string()
                       : config.dataset_name;
  report.config.dataset_name = report.dataset;
  report.source = DescribeSource(config.predictor);

  const Dataset data = Encode(LoadCsv(config.data_path, config.target));
  report.class_names = data.schema().class_names;

  std::optional<CostMatrix> fixed_costs;
  if (config.cost_matrix != "default") {
    auto loaded = LoadCostMatrix(config.cost_matrix, data.num_classes());
    for (const auto& w : loaded.warnings) {
      report.cost_matrix_warnings.push_back(
          "column " + data.schema().class_names[w.dominant] + " dominates column " +
          data.schema().class_names[w.dominated]);
    }
    fixed_costs.emplace(std::move(loaded.matrix));
  }

  std::vector<std::optional<RunOutcome>> outcomes(config.repeats);
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  size_t first_error_run = 0;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const size_t run = next.fetch_add(1);
      if (run >= config.repeats || failed.load()) return;
      try {
        outcomes[run] = RunOnce(config, data, fixed_costs, report.dataset, run);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        // Report the lowest failing run so the message is deterministic.
        if (!first_error || run < first_error_run) {
          first_error = std::current_exception();
          first_error_run = run;
        }
        failed = true;
      }
    }
  };
  const size_t threads = std::min(config.parallel, config.repeats);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) {
    const std::string where = "run " + std::to_string(first_error_run) + " (seed " +
                              std::to_string(config.seed + first_error_run) + "): ";
    try {
      std::rethrow_exception(first_error);
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    } catch (const std::exception& e) {
      ThrowInternal(where + e.what());
    }
  }

  for (auto& o : outcomes) {
    for (auto& r : o->records) report.records.push_back(std::move(r));
    for (auto& r : o->rules) report.rules.push_back(std::move(r));
  }
  Summarize(report);
  return report;
}

void Summarize(EvaluationReport& report) {
  const auto& methods = report.config.methods;
  const size_t k = methods.size();
  report.summary.clear();
  report.friedman.clear();
  report.wilcoxon.clear();
  report.ranks.clear();
  report.overall_rank.clear();

  // values[metric][method][run]
  std::vector<std::vector<std::vector<double>>> values(
      kMetricNames.size(), std::vector<std::vector<double>>(k));
  for (const auto& r : report.records) {
    const auto it = std::find(methods.begin(), methods.end(), r.method);
    if (it == methods.end()) ThrowInternal("record for unknown method " + r.method);
    const auto j = static_cast<size_t>(it - methods.begin());
    for (size_t m = 0; m < kMetricNames.size(); ++m) values[m][j].push_back(MetricValue(r, m));
  }
  const size_t runs = k > 0 ? values[0][0].size() : 0;
  for (size_t m = 0; m < kMetricNames.size(); ++m) {
    for (size_t j = 0; j < k; ++j) {
      if (values[m][j].size() != runs) ThrowInternal("methods have different run counts");
    }
  }

  for (size_t m = 0; m < kMetricNames.size(); ++m) {
    for (size_t j = 0; j < k; ++j) {
      const auto& v = values[m][j];
      MetricSummary s{kMetricNames[m], methods[j], 0.0, 0.0};
      for (double x : v) s.mean += x;
      s.mean /= static_cast<double>(v.size());
      if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.std_dev = std::sqrt(ss / static_cast<double>(v.size() - 1));
      }
      report.summary.push_back(s);
    }
  }

  for (size_t m = 0; m < kMetricNames.size(); ++m) {
    FriedmanEntry entry{kMetricNames[m], std::nullopt};
    if (k >= 2 && runs >= 2) {
      stats::RankTable table;
      table.methods = methods;
      table.direction = MetricDirection(m);
      for (size_t r = 0; r < runs; ++r) {
        std::vector<double> block(k);
        for (size_t j = 0; j < k; ++j) block[j] = values[m][j][r];
        table.blocks.push_back(std::move(block));
      }
      entry.result = stats::Friedman(table, report.config.alpha);
    }
    report.friedman.push_back(std::move(entry));

    for (size_t a = 0; a < k; ++a) {
      for (size_t b = a + 1; b < k; ++b) {
        WilcoxonEntry w{kMetricNames[m], methods[a], methods[b], std::nullopt};
        if (runs >= stats::kWilcoxonMinPairs) {
          w.result = stats::Wilcoxon(values[m][a], values[m][b], report.config.alpha);
        }
        report.wilcoxon.push_back(std::move(w));
      }
    }
  }

  if (k >= 2 && runs >= 1) {
    report.overall_rank.assign(k, 0.0);
    for (size_t m = 0; m < kMetricNames.size(); ++m) {
      RankEntry entry{kMetricNames[m], stats::RankAndNormalize(values[m], MetricDirection(m))};
      for (size_t j = 0; j < k; ++j) {
        report.overall_rank[j] += entry.normalized[j] / static_cast<double>(kMetricNames.size());
      }
      report.ranks.push_back(std::move(entry));
    }
  }
}

}  // namespace cortex
