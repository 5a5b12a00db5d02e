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

#include "cortex/cortex.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/baseline_dt.hpp"
#include "core/cortex_tree.hpp"
#include "core/cost_matrix.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/experiment.hpp"
#include "core/metrics.hpp"
#include "core/rules.hpp"
#include "core/text.hpp"
#include "core/tree.hpp"
#include "json.hpp"

struct cortex_dataset {
  cortex::Dataset data;
};
struct cortex_cost_matrix {
  cortex::CostMatrix matrix;
};
struct cortex_tree {
  cortex::Tree tree;
};
struct cortex_ruleset {
  cortex::RuleSet rules;
};
struct cortex_report {
  cortex::EvaluationReport report;
};

namespace {

thread_local std::string g_last_error;

cortex_status Fail(cortex_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename F>
cortex_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return CORTEX_OK;
  } catch (const cortex::Error& e) {
    return Fail(static_cast<cortex_status>(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(CORTEX_ERROR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CORTEX_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CORTEX_ERROR_INTERNAL, e.what());
  } catch (...) {
    return Fail(CORTEX_ERROR_INTERNAL, "unknown exception");
  }
}

void Require(bool condition, const char* message) {
  if (!condition) cortex::ThrowConfig(message);
}

char* Dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cortex::TreeParams ToParams(const cortex_tree_params* p) {
  cortex::TreeParams out;
  if (p != nullptr) {
    out.max_depth = p->max_depth;
    out.min_samples_leaf = p->min_samples_leaf;
    out.min_gain = p->min_gain;
    out.max_thresholds = p->max_thresholds;
  }
  return out;
}

}  // namespace

extern "C" {

const char* cortex_last_error(void) { return g_last_error.c_str(); }

const char* cortex_version(void) { return "1.0.0"; }

void cortex_string_free(char* s) { std::free(s); }

cortex_status cortex_dataset_load_csv(const char* path, const char* target,
                                      cortex_dataset** out) {
  return Guard([&] {
    Require(path != nullptr && target != nullptr && out != nullptr, "null argument");
    *out = new cortex_dataset{cortex::Encode(cortex::LoadCsv(path, target))};
  });
}

cortex_status cortex_dataset_parse_csv(const char* content, const char* target,
                                       cortex_dataset** out) {
  return Guard([&] {
    Require(content != nullptr && target != nullptr && out != nullptr, "null argument");
    *out = new cortex_dataset{cortex::Encode(cortex::ParseCsvTable(content, target))};
  });
}

void cortex_dataset_free(cortex_dataset* data) { delete data; }

size_t cortex_dataset_num_rows(const cortex_dataset* data) {
  return data ? data->data.num_rows() : 0;
}

size_t cortex_dataset_num_features(const cortex_dataset* data) {
  return data ? data->data.num_features() : 0;
}

size_t cortex_dataset_num_classes(const cortex_dataset* data) {
  return data ? data->data.num_classes() : 0;
}

const char* cortex_dataset_class_name(const cortex_dataset* data, size_t k) {
  if (data == nullptr || k >= data->data.num_classes()) return nullptr;
  return data->data.schema().class_names[k].c_str();
}

const char* cortex_dataset_feature_name(const cortex_dataset* data, size_t j) {
  if (data == nullptr || j >= data->data.num_features()) return nullptr;
  return data->data.schema().features[j].name.c_str();
}

int cortex_dataset_label(const cortex_dataset* data, size_t i) {
  if (data == nullptr || i >= data->data.num_rows()) return -1;
  return data->data.labels()[i];
}

const double* cortex_dataset_row(const cortex_dataset* data, size_t i) {
  if (data == nullptr || i >= data->data.num_rows()) return nullptr;
  return data->data.row(i).data();
}

cortex_status cortex_dataset_split(const cortex_dataset* data, double train_fraction,
                                   uint64_t seed, int stratified, cortex_dataset** train,
                                   cortex_dataset** test) {
  return Guard([&] {
    Require(data != nullptr && train != nullptr && test != nullptr, "null argument");
    auto parts = cortex::Split(data->data, train_fraction, seed, stratified != 0);
    auto first = std::make_unique<cortex_dataset>(cortex_dataset{std::move(parts.first)});
    *test = new cortex_dataset{std::move(parts.second)};
    *train = first.release();
  });
}

cortex_status cortex_dataset_with_labels(const cortex_dataset* data, const int* labels,
                                         size_t n, cortex_dataset** out) {
  return Guard([&] {
    Require(data != nullptr && labels != nullptr && out != nullptr, "null argument");
    if (n != data->data.num_rows()) cortex::ThrowData("label count does not match row count");
    *out = new cortex_dataset{data->data.WithLabels({labels, labels + n})};
  });
}

cortex_status cortex_dataset_to_csv(const cortex_dataset* data, const char* target_name,
                                    char** out) {
  return Guard([&] {
    Require(data != nullptr && target_name != nullptr && out != nullptr, "null argument");
    *out = Dup(cortex::EncodedCsv(data->data, target_name));
  });
}

cortex_status cortex_cost_matrix_default(const cortex_dataset* data,
                                         cortex_cost_matrix** out) {
  return Guard([&] {
    Require(data != nullptr && out != nullptr, "null argument");
    *out = new cortex_cost_matrix{cortex::DefaultCostMatrix(data->data.class_counts())};
  });
}

cortex_status cortex_cost_matrix_from_values(const double* values, size_t k,
                                             cortex_cost_matrix** out) {
  return Guard([&] {
    Require(values != nullptr && out != nullptr, "null argument");
    std::vector<std::vector<double>> rows(k);
    for (size_t i = 0; i < k; ++i) rows[i].assign(values + i * k, values + (i + 1) * k);
    cortex::CostMatrix matrix(rows);
    const auto report = cortex::Validate(matrix);
    if (!report.ok()) cortex::ThrowData(report.Describe());
    *out = new cortex_cost_matrix{std::move(matrix)};
  });
}

cortex_status cortex_cost_matrix_load(const char* path, size_t expected_k,
                                      cortex_cost_matrix** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    std::optional<size_t> k;
    if (expected_k > 0) k = expected_k;
    *out = new cortex_cost_matrix{cortex::LoadCostMatrix(path, k).matrix};
  });
}

void cortex_cost_matrix_free(cortex_cost_matrix* m) { delete m; }

size_t cortex_cost_matrix_num_classes(const cortex_cost_matrix* m) {
  return m ? m->matrix.num_classes() : 0;
}

double cortex_cost_matrix_get(const cortex_cost_matrix* m, size_t actual, size_t predicted) {
  if (m == nullptr || actual >= m->matrix.num_classes() ||
      predicted >= m->matrix.num_classes()) {
    return -1.0;
  }
  return m->matrix.at(actual, predicted);
}

cortex_tree_params cortex_tree_params_default(void) {
  const cortex::TreeParams p;
  return {p.max_depth, p.min_samples_leaf, p.min_gain, p.max_thresholds};
}

cortex_status cortex_tree_fit_cortex(const cortex_dataset* train,
                                     const cortex_cost_matrix* costs,
                                     const cortex_tree_params* params, cortex_tree** out) {
  return Guard([&] {
    Require(train != nullptr && out != nullptr, "null argument");
    if (costs != nullptr) {
      *out = new cortex_tree{cortex::FitCortex(train->data, costs->matrix, ToParams(params))};
    } else {
      const auto matrix = cortex::DefaultCostMatrix(train->data.class_counts());
      *out = new cortex_tree{cortex::FitCortex(train->data, matrix, ToParams(params))};
    }
  });
}

cortex_status cortex_tree_fit_weighted(const cortex_dataset* train,
                                       const cortex_tree_params* params, cortex_tree** out) {
  return Guard([&] {
    Require(train != nullptr && out != nullptr, "null argument");
    *out = new cortex_tree{cortex::FitWeighted(train->data, ToParams(params))};
  });
}

void cortex_tree_free(cortex_tree* tree) { delete tree; }

cortex_status cortex_tree_predict(const cortex_tree* tree, const double* x, size_t num_features,
                                  int* label, double* probabilities, size_t num_classes) {
  return Guard([&] {
    Require(tree != nullptr && x != nullptr && label != nullptr, "null argument");
    const auto p = tree->tree.Predict({x, num_features});
    *label = p.label;
    if (probabilities != nullptr) {
      if (num_classes != p.probabilities.size()) {
        cortex::ThrowConfig("probability buffer has the wrong length");
      }
      std::copy(p.probabilities.begin(), p.probabilities.end(), probabilities);
    }
  });
}

size_t cortex_tree_num_leaves(const cortex_tree* tree) {
  return tree ? tree->tree.num_leaves() : 0;
}

int cortex_tree_depth(const cortex_tree* tree) { return tree ? tree->tree.depth() : -1; }

cortex_status cortex_tree_to_text(const cortex_tree* tree, char** out) {
  return Guard([&] {
    Require(tree != nullptr && out != nullptr, "null argument");
    *out = Dup(cortex::TreeToText(tree->tree));
  });
}

cortex_status cortex_rules_extract(const cortex_tree* tree, cortex_ruleset** out) {
  return Guard([&] {
    Require(tree != nullptr && out != nullptr, "null argument");
    *out = new cortex_ruleset{cortex::ExtractRules(tree->tree)};
  });
}

void cortex_ruleset_free(cortex_ruleset* rules) { delete rules; }

size_t cortex_ruleset_size(const cortex_ruleset* rules) {
  return rules ? rules->rules.rules.size() : 0;
}

cortex_status cortex_ruleset_apply(const cortex_ruleset* rules, const double* x,
                                   size_t num_features, int* label) {
  return Guard([&] {
    Require(rules != nullptr && x != nullptr && label != nullptr, "null argument");
    const auto result = cortex::ApplyRules(rules->rules, {x, num_features});
    *label = result ? *result : -1;
  });
}

cortex_status cortex_ruleset_to_text(const cortex_ruleset* rules, char** out) {
  return Guard([&] {
    Require(rules != nullptr && out != nullptr, "null argument");
    *out = Dup(cortex::RulesToText(rules->rules));
  });
}

cortex_status cortex_ruleset_to_json(const cortex_ruleset* rules, char** out) {
  return Guard([&] {
    Require(rules != nullptr && out != nullptr, "null argument");
    *out = Dup(cortex::RulesToJson(rules->rules));
  });
}

cortex_status cortex_evaluate(const cortex_ruleset* rules, const cortex_dataset* samples,
                              const int* blackbox_labels, size_t n, double sigma,
                              uint64_t seed, cortex_metrics* out) {
  return Guard([&] {
    Require(rules != nullptr && samples != nullptr && blackbox_labels != nullptr &&
                out != nullptr,
            "null argument");
    const auto& data = samples->data;
    if (n != data.num_rows()) cortex::ThrowData("label count does not match row count");
    const std::span<const int> bb(blackbox_labels, n);
    const auto scales = data.FeatureStdDev();
    const auto size = cortex::SizeMetrics(rules->rules);
    out->completeness = cortex::Completeness(rules->rules, data);
    out->correctness = cortex::Correctness(rules->rules, data, data.labels());
    out->fidelity = cortex::Fidelity(rules->rules, data, bb);
    out->robustness = cortex::Robustness(rules->rules, data, sigma, scales, seed);
    out->num_rules = size.num_rules;
    out->average_rule_length = size.average_length;
  });
}

cortex_status cortex_experiment_run(const char* config_json, cortex_report** out) {
  return Guard([&] {
    Require(config_json != nullptr && out != nullptr, "null argument");
    const auto doc = nlohmann::json::parse(config_json);
    *out = new cortex_report{cortex::RunExperiment(cortex::ConfigFromJson(doc))};
  });
}

void cortex_report_free(cortex_report* report) { delete report; }

size_t cortex_report_num_records(const cortex_report* report) {
  return report ? report->report.records.size() : 0;
}

cortex_status cortex_report_to_json(const cortex_report* report, char** out) {
  return Guard([&] {
    Require(report != nullptr && out != nullptr, "null argument");
    *out = Dup(cortex::ReportToJson(report->report).dump(2));
  });
}

cortex_status cortex_report_to_csv(const cortex_report* report, char** out) {
  return Guard([&] {
    Require(report != nullptr && out != nullptr, "null argument");
    *out = Dup(cortex::ReportToCsv(report->report));
  });
}

cortex_status cortex_report_to_text(const cortex_report* report, char** out) {
  return Guard([&] {
    Require(report != nullptr && out != nullptr, "null argument");
    *out = Dup(cortex::ReportToText(report->report));
  });
}

cortex_status cortex_report_write(const cortex_report* report, const char* out_dir,
                                  const char* formats) {
  return Guard([&] {
    Require(report != nullptr && out_dir != nullptr, "null argument");
    auto list = report->report.config.formats;
    if (formats != nullptr) {
      list.clear();
      std::string_view rest(formats);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = cortex::text::Trim(rest.substr(0, comma));
        if (!item.empty()) list.emplace_back(item);
        rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
      }
    }
    cortex::WriteReport(report->report, out_dir, list);
  });
}

}  // extern "C"
