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

// Report rendering: full JSON, plot-ready CSV and a plain-text summary
// (mean (std) grid plus best/worst/rank table).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "core/error.hpp"
#include "core/experiment.hpp"
#include "core/text.hpp"

namespace cortex {

namespace {

constexpr int kTextDecimals = 4;
constexpr const char* kInsufficient = "insufficient blocks";

const MetricSummary* FindSummary(const EvaluationReport& report, std::string_view metric,
                                 std::string_view method) {
  for (const auto& s : report.summary) {
    if (s.metric == metric && s.method == method) return &s;
  }
  return nullptr;
}

nlohmann::ordered_json RecordToJson(const MetricRecord& r) {
  return {{"method", r.method},
          {"dataset", r.dataset},
          {"run", r.run},
          {"seed", r.seed},
          {"sigma", r.sigma},
          {"completeness", r.completeness},
          {"correctness", r.correctness},
          {"fidelity", r.fidelity},
          {"robustness", r.robustness},
          {"num_rules", r.num_rules},
          {"avg_rule_length", r.average_rule_length},
          {"avg_raw_rule_length", r.average_raw_rule_length}};
}

}  // namespace

nlohmann::ordered_json ReportToJson(const EvaluationReport& report) {
  nlohmann::ordered_json doc;
  doc["config"] = ConfigToJson(report.config);
  doc["dataset"] = report.dataset;
  doc["blackbox_source"] = report.source;
  doc["classes"] = report.class_names;
  doc["cost_matrix_warnings"] = report.cost_matrix_warnings;

  auto& records = doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) records.push_back(RecordToJson(r));

  auto& summary = doc["summary"] = nlohmann::ordered_json::array();
  for (const auto& s : report.summary) {
    summary.push_back(
        {{"metric", s.metric}, {"method", s.method}, {"mean", s.mean}, {"std", s.std_dev}});
  }

  auto& friedman = doc["friedman"] = nlohmann::ordered_json::array();
  for (const auto& f : report.friedman) {
    nlohmann::ordered_json entry{{"metric", f.metric}};
    if (!f.result) {
      entry["status"] = kInsufficient;
    } else {
      const auto& r = *f.result;
      entry["status"] = "ok";
      entry["statistic"] = r.statistic;
      entry["p_value"] = r.p_value;
      entry["exact_p_value"] =
          r.exact_p_value ? nlohmann::ordered_json(*r.exact_p_value) : nullptr;
      entry["alpha"] = r.alpha;
      entry["reject"] = r.reject;
      entry["n"] = r.blocks;
      entry["k"] = r.methods;
      entry["mean_ranks"] = r.mean_ranks;
    }
    friedman.push_back(std::move(entry));
  }

  auto& wilcoxon = doc["wilcoxon"] = nlohmann::ordered_json::array();
  for (const auto& w : report.wilcoxon) {
    nlohmann::ordered_json entry{
        {"metric", w.metric}, {"method_a", w.method_a}, {"method_b", w.method_b}};
    if (!w.result) {
      entry["status"] = kInsufficient;
    } else {
      const auto& r = *w.result;
      entry["status"] = "ok";
      entry["statistic"] = r.w;
      entry["w_plus"] = r.w_plus;
      entry["w_minus"] = r.w_minus;
      entry["p_value"] = r.p_value;
      entry["exact"] = r.exact;
      entry["alpha"] = r.alpha;
      entry["reject"] = r.reject;
      entry["n"] = r.n;
      entry["n_nonzero"] = r.n_nonzero;
      entry["k"] = 2;
    }
    wilcoxon.push_back(std::move(entry));
  }

  auto& ranks = doc["normalized_ranks"] = nlohmann::ordered_json::object();
  for (const auto& r : report.ranks) {
    nlohmann::ordered_json per_method;
    for (size_t j = 0; j < r.normalized.size(); ++j) {
      per_method[report.config.methods[j]] = r.normalized[j];
    }
    ranks[r.metric] = std::move(per_method);
  }
  if (!report.overall_rank.empty()) {
    nlohmann::ordered_json overall;
    for (size_t j = 0; j < report.overall_rank.size(); ++j) {
      overall[report.config.methods[j]] = report.overall_rank[j];
    }
    ranks["overall"] = std::move(overall);
  }
  return doc;
}

std::string ReportToCsv(const EvaluationReport& report) {
  std::string out =
      "method,dataset,run,seed,sigma,completeness,correctness,fidelity,robustness,"
      "num_rules,avg_rule_length,avg_raw_rule_length\n";
  for (const auto& r : report.records) {
    const std::vector<std::string> fields = {
        r.method,
        r.dataset,
        std::to_string(r.run),
        std::to_string(r.seed),
        text::FormatDouble(r.sigma),
        text::FormatDouble(r.completeness),
        text::FormatDouble(r.correctness),
        text::FormatDouble(r.fidelity),
        text::FormatDouble(r.robustness),
        std::to_string(r.num_rules),
        text::FormatDouble(r.average_rule_length),
        text::FormatDouble(r.average_raw_rule_length)};
    out += text::CsvLine(fields) + "\n";
  }
  out += "\nmetric,method,mean,std\n";
  for (const auto& s : report.summary) {
    const std::vector<std::string> fields = {s.metric, s.method, text::FormatDouble(s.mean),
                                             text::FormatDouble(s.std_dev)};
    out += text::CsvLine(fields) + "\n";
  }
  return out;
}

namespace {

std::string Pad(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string ReportToText(const EvaluationReport& report) {
  const auto& methods = report.config.methods;
  std::string out;
  out += "Dataset: " + report.dataset + "\n";
  out += "Black box: " + report.source + "\n";
  out += "Runs: " + std::to_string(report.config.repeats) +
         ", train fraction: " + text::FormatDouble(report.config.train_fraction) +
         ", noise sigma: " + text::FormatDouble(report.config.noise_sigma) +
         ", base seed: " + std::to_string(report.config.seed) + "\n";
  for (const auto& w : report.cost_matrix_warnings) out += "Cost matrix warning: " + w + "\n";

  constexpr size_t kMetricWidth = 18;
  constexpr size_t kCellWidth = 20;
  out += "\nMEAN (STD)\n" + Pad("Metric", kMetricWidth);
  for (const auto& m : methods) out += Pad(m, kCellWidth);
  out += "\n";
  for (const char* metric : kMetricNames) {
    out += Pad(metric, kMetricWidth);
    for (const auto& m : methods) {
      const auto* s = FindSummary(report, metric, m);
      out += Pad(text::FormatFixed(s->mean, kTextDecimals) + " (" +
                     text::FormatFixed(s->std_dev, kTextDecimals) + ")",
                 kCellWidth);
    }
    out += "\n";
  }

  out += "\nFriedman test (alpha " + text::FormatDouble(report.config.alpha) + ")\n";
  for (const auto& f : report.friedman) {
    out += Pad(f.metric, kMetricWidth);
    if (!f.result) {
      out += kInsufficient;
    } else {
      out += "chi2 = " + text::FormatFixed(f.result->statistic, kTextDecimals) +
             ", p = " + text::FormatFixed(f.result->p_value, kTextDecimals) +
             (f.result->reject ? ", reject" : ", no rejection");
    }
    out += "\n";
  }

  if (!report.wilcoxon.empty()) {
    out += "\nWilcoxon signed-rank test (alpha " + text::FormatDouble(report.config.alpha) +
           ")\n";
    for (const auto& w : report.wilcoxon) {
      out += Pad(w.metric, kMetricWidth) + w.method_a + " vs " + w.method_b + ": ";
      if (!w.result) {
        out += kInsufficient;
      } else {
        out += "W = " + text::FormatFixed(w.result->w, 1) +
               ", p = " + text::FormatFixed(w.result->p_value, kTextDecimals) +
               (w.result->reject ? ", reject" : ", no rejection");
      }
      out += "\n";
    }
  }

  if (!report.ranks.empty()) {
    const bool compare = std::find(methods.begin(), methods.end(), "cortex") != methods.end() &&
                         std::find(methods.begin(), methods.end(), "dt") != methods.end();
    out += "\nRANKING (normalized rank: 0 = best in every run, 1 = worst)\n";
    out += Pad("Metric", kMetricWidth) + Pad("Best method", kCellWidth) +
           Pad("Worst method", kCellWidth) + Pad("cortex rank", 14) +
           (compare ? "cortex vs. dt" : "") + "\n";
    for (size_t m = 0; m < report.ranks.size(); ++m) {
      const auto& r = report.ranks[m];
      const double lo = *std::min_element(r.normalized.begin(), r.normalized.end());
      const double hi = *std::max_element(r.normalized.begin(), r.normalized.end());
      std::vector<std::string> best, worst;
      for (size_t j = 0; j < methods.size(); ++j) {
        if (r.normalized[j] == lo) best.push_back(methods[j]);
        if (r.normalized[j] == hi) worst.push_back(methods[j]);
      }
      std::string cortex_rank = "-";
      const auto it = std::find(methods.begin(), methods.end(), "cortex");
      if (it != methods.end()) {
        const double mine = r.normalized[static_cast<size_t>(it - methods.begin())];
        std::vector<double> distinct(r.normalized);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        cortex_rank = std::to_string(
            std::find(distinct.begin(), distinct.end(), mine) - distinct.begin() + 1);
      }
      std::string versus;
      if (compare) {
        versus = "cortex, dt";
        for (const auto& w : report.wilcoxon) {
          const bool pair = (w.method_a == "cortex" && w.method_b == "dt") ||
                            (w.method_a == "dt" && w.method_b == "cortex");
          if (w.metric != r.metric || !pair) continue;
          if (!w.result) {
            versus = kInsufficient;
          } else if (w.result->reject) {
            const double c = FindSummary(report, r.metric, "cortex")->mean;
            const double d = FindSummary(report, r.metric, "dt")->mean;
            const bool higher = MetricDirection(m) == stats::Direction::kHigherBetter;
            versus = (higher ? c > d : c < d) ? "cortex" : "dt";
          }
        }
      }
      out += Pad(r.metric, kMetricWidth) + Pad(JoinNames(best), kCellWidth) +
             Pad(JoinNames(worst), kCellWidth) + Pad(cortex_rank, 14) + versus + "\n";
    }
    out += Pad("overall", kMetricWidth);
    for (size_t j = 0; j < methods.size(); ++j) {
      if (j > 0) out += ", ";
      out += methods[j] + " " + text::FormatFixed(report.overall_rank[j], kTextDecimals);
    }
    out += "\n";
  }
  return out;
}

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) ThrowConfig("cannot write '" + path.string() + "': unwritable output directory");
  out << content;
  if (!out) ThrowConfig("failed writing '" + path.string() + "'");
}

}  // namespace

void WriteReport(const EvaluationReport& report, const std::string& out_dir,
                 const std::vector<std::string>& formats) {
  if (out_dir.empty()) ThrowConfig("no output directory given");
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir / "rules", ec);
  if (ec) ThrowConfig("unwritable output directory '" + out_dir + "': " + ec.message());

  for (const auto& f : formats) {
    if (f == "json") {
      WriteFile(dir / "report.json", ReportToJson(report).dump(2) + "\n");
    } else if (f == "csv") {
      WriteFile(dir / "report.csv", ReportToCsv(report));
    } else if (f == "text") {
      WriteFile(dir / "report.txt", ReportToText(report));
    } else {
      ThrowConfig("unknown report format '" + f + "'");
    }
  }
  const size_t width = std::to_string(std::max<size_t>(report.config.repeats, 1) - 1).size();
  for (const auto& r : report.rules) {
    std::string run = std::to_string(r.run);
    run.insert(0, width > run.size() ? width - run.size() : 0, '0');
    WriteFile(dir / "rules" / (r.method + "_run" + run + ".txt"), r.text);
  }
}

}  // namespace cortex
