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

// Command-line front end. Exit codes: 0 success, 1 usage or configuration
// error, 2 data error, 3 oracle error, 4 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cortex/cortex.h"
#include "json.hpp"

namespace {

int Report(cortex_status status) {
  std::cerr << "error: " << cortex_last_error() << "\n";
  return static_cast<int>(status);
}

// Owns a char* returned by the library.
struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { cortex_string_free(p); }
};

struct RunFlags {
  std::string config;
  std::string data;
  std::string target;
  std::string predictions;
  std::string prediction_column;
  std::string oracle_cmd;
  double oracle_timeout = 60.0;
  std::string cost_matrix;
  double train_fraction = 0.7;
  size_t repeats = 100;
  uint64_t seed = 0;
  double noise_sigma = 0.1;
  int max_depth = 20;
  size_t min_leaf = 1;
  std::string methods;
  std::string out;
  size_t parallel = 1;
  std::string format;
  double surrogate_holdout = 0.0;
  bool quiet = false;
};

int RunExperiment(const RunFlags& f, const CLI::App& app) {
  nlohmann::json doc = nlohmann::json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) {
      std::cerr << "error: cannot open config file '" << f.config << "'\n";
      return CORTEX_ERROR_CONFIG;
    }
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: config file '" << f.config << "': " << e.what() << "\n";
      return CORTEX_ERROR_CONFIG;
    }
    if (!doc.is_object()) {
      std::cerr << "error: config file must hold a JSON object\n";
      return CORTEX_ERROR_CONFIG;
    }
  }
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--data")) doc["data"] = f.data;
  if (given("--target")) doc["target"] = f.target;
  if (given("--predictions")) {
    doc.erase("oracle_cmd");
    doc["predictions"] = f.predictions;
  }
  if (given("--prediction-column")) doc["prediction_column"] = f.prediction_column;
  if (given("--oracle-cmd")) {
    doc.erase("predictions");
    doc["oracle_cmd"] = f.oracle_cmd;
  }
  if (given("--oracle-timeout")) doc["oracle_timeout"] = f.oracle_timeout;
  if (given("--cost-matrix")) doc["cost_matrix"] = f.cost_matrix;
  if (given("--train-fraction")) doc["train_fraction"] = f.train_fraction;
  if (given("--repeats")) doc["repeats"] = f.repeats;
  if (given("--seed")) doc["seed"] = f.seed;
  if (given("--noise-sigma")) doc["noise_sigma"] = f.noise_sigma;
  if (given("--max-depth")) doc["max_depth"] = f.max_depth;
  if (given("--min-leaf")) doc["min_leaf"] = f.min_leaf;
  if (given("--methods")) doc["methods"] = f.methods;
  if (given("--out")) doc["out"] = f.out;
  if (given("--parallel")) doc["parallel"] = f.parallel;
  if (given("--format")) doc["format"] = f.format;
  if (given("--surrogate-holdout")) doc["surrogate_holdout"] = f.surrogate_holdout;

  cortex_report* report = nullptr;
  if (auto s = cortex_experiment_run(doc.dump().c_str(), &report); s != CORTEX_OK) {
    return Report(s);
  }
  std::unique_ptr<cortex_report, decltype(&cortex_report_free)> guard(report,
                                                                      cortex_report_free);
  const std::string out_dir = doc.value("out", std::string());
  if (!out_dir.empty()) {
    if (auto s = cortex_report_write(report, out_dir.c_str(), nullptr); s != CORTEX_OK) {
      return Report(s);
    }
  }
  if (!f.quiet) {
    OwnedString text;
    if (auto s = cortex_report_to_text(report, &text.p); s != CORTEX_OK) return Report(s);
    std::cout << text.p;
    if (!out_dir.empty()) std::cout << "\nReports written to " << out_dir << "\n";
  }
  return 0;
}

int Encode(const std::string& data, const std::string& target, const std::string& out) {
  cortex_dataset* ds = nullptr;
  if (auto s = cortex_dataset_load_csv(data.c_str(), target.c_str(), &ds); s != CORTEX_OK) {
    return Report(s);
  }
  std::unique_ptr<cortex_dataset, decltype(&cortex_dataset_free)> guard(ds,
                                                                        cortex_dataset_free);
  OwnedString csv;
  if (auto s = cortex_dataset_to_csv(ds, target.c_str(), &csv.p); s != CORTEX_OK) {
    return Report(s);
  }
  if (out.empty() || out == "-") {
    std::cout << csv.p;
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!(file << csv.p)) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return CORTEX_ERROR_CONFIG;
  }
  return 0;
}

struct FitFlags {
  std::string data;
  std::string target;
  std::string method = "cortex";
  std::string cost_matrix = "default";
  int max_depth = 20;
  size_t min_leaf = 1;
  bool json = false;
  bool tree = false;
};

// Fits one surrogate to the data's own labels and prints its rules.
int Fit(const FitFlags& f) {
  cortex_dataset* ds = nullptr;
  if (auto s = cortex_dataset_load_csv(f.data.c_str(), f.target.c_str(), &ds);
      s != CORTEX_OK) {
    return Report(s);
  }
  std::unique_ptr<cortex_dataset, decltype(&cortex_dataset_free)> data(ds,
                                                                       cortex_dataset_free);
  cortex_tree_params params = cortex_tree_params_default();
  params.max_depth = f.max_depth;
  params.min_samples_leaf = f.min_leaf;

  cortex_tree* t = nullptr;
  if (f.method == "dt") {
    if (auto s = cortex_tree_fit_weighted(ds, &params, &t); s != CORTEX_OK) return Report(s);
  } else {
    cortex_cost_matrix* m = nullptr;
    if (f.cost_matrix != "default") {
      if (auto s = cortex_cost_matrix_load(f.cost_matrix.c_str(),
                                           cortex_dataset_num_classes(ds), &m);
          s != CORTEX_OK) {
        return Report(s);
      }
    }
    const auto s = cortex_tree_fit_cortex(ds, m, &params, &t);
    cortex_cost_matrix_free(m);
    if (s != CORTEX_OK) return Report(s);
  }
  std::unique_ptr<cortex_tree, decltype(&cortex_tree_free)> tree(t, cortex_tree_free);

  OwnedString text;
  if (f.tree) {
    if (auto s = cortex_tree_to_text(t, &text.p); s != CORTEX_OK) return Report(s);
    std::cout << text.p;
    return 0;
  }
  cortex_ruleset* r = nullptr;
  if (auto s = cortex_rules_extract(t, &r); s != CORTEX_OK) return Report(s);
  std::unique_ptr<cortex_ruleset, decltype(&cortex_ruleset_free)> rules(r,
                                                                        cortex_ruleset_free);
  const auto s = f.json ? cortex_ruleset_to_json(r, &text.p) : cortex_ruleset_to_text(r, &text.p);
  if (s != CORTEX_OK) return Report(s);
  std::cout << text.p;
  if (f.json) std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-sensitive surrogate rule extraction and evaluation"};
  app.set_version_flag("--version", std::string(cortex_version()));
  app.require_subcommand(0, 1);

  RunFlags run;
  app.add_option("--config", run.config, "JSON configuration file; flags override it");
  app.add_option("--data", run.data, "input CSV");
  app.add_option("--target", run.target, "target column name");
  auto* pred = app.add_option("--predictions", run.predictions,
                              "CSV of black-box predictions, row-aligned with --data");
  app.add_option("--prediction-column", run.prediction_column,
                 "label column in the predictions file (default: prediction)");
  auto* oracle = app.add_option("--oracle-cmd", run.oracle_cmd,
                                "shell command acting as the black box");
  pred->excludes(oracle);
  app.add_option("--oracle-timeout", run.oracle_timeout, "oracle timeout in seconds");
  app.add_option("--cost-matrix", run.cost_matrix, "'default' or a cost matrix CSV");
  app.add_option("--train-fraction", run.train_fraction, "black-box training fraction");
  app.add_option("--repeats", run.repeats, "number of randomized runs");
  app.add_option("--seed", run.seed, "base seed; run r uses seed + r");
  app.add_option("--noise-sigma", run.noise_sigma, "robustness noise scale");
  app.add_option("--max-depth", run.max_depth, "maximum tree depth");
  app.add_option("--min-leaf", run.min_leaf, "minimum samples per leaf");
  app.add_option("--methods", run.methods, "comma-separated subset of cortex,dt");
  app.add_option("--out", run.out, "output directory");
  app.add_option("--parallel", run.parallel, "concurrent runs");
  app.add_option("--format", run.format, "comma-separated subset of json,csv,text");
  app.add_option("--surrogate-holdout", run.surrogate_holdout,
                 "fraction of the surrogate portion held out for scoring");
  app.add_flag("--quiet", run.quiet, "do not print the text summary");

  auto* encode = app.add_subcommand("encode", "write the one-hot encoded table as CSV");
  std::string enc_data, enc_target, enc_out;
  encode->add_option("--data", enc_data, "input CSV")->required();
  encode->add_option("--target", enc_target, "target column name")->required();
  encode->add_option("--out", enc_out, "output file (default: stdout)");

  auto* fit = app.add_subcommand("fit", "fit one tree to the data labels and print its rules");
  FitFlags ff;
  fit->add_option("--data", ff.data, "input CSV")->required();
  fit->add_option("--target", ff.target, "target column name")->required();
  fit->add_option("--method", ff.method, "cortex or dt")
      ->check(CLI::IsMember({"cortex", "dt"}));
  fit->add_option("--cost-matrix", ff.cost_matrix, "'default' or a cost matrix CSV");
  fit->add_option("--max-depth", ff.max_depth, "maximum tree depth");
  fit->add_option("--min-leaf", ff.min_leaf, "minimum samples per leaf");
  fit->add_flag("--json", ff.json, "print rules as JSON");
  fit->add_flag("--tree", ff.tree, "print the tree instead of rules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : CORTEX_ERROR_CONFIG;
  }

  if (encode->parsed()) return Encode(enc_data, enc_target, enc_out);
  if (fit->parsed()) return Fit(ff);
  return RunExperiment(run, app);
}
