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

#include "core/cost_matrix.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cortex {

CostMatrix::CostMatrix(const std::vector<std::vector<double>>& rows)
    : k_(rows.size()) {
  if (k_ < 2) ThrowData("cost matrix needs at least 2 classes");
  cost_.reserve(k_ * k_);
  for (size_t i = 0; i < k_; ++i) {
    if (rows[i].size() != k_) {
      ThrowData("cost matrix is not square: row " + std::to_string(i) +
                " has " + std::to_string(rows[i].size()) + " entries, expected " +
                std::to_string(k_));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) ThrowData("cost matrix entry is not finite");
      if (v < 0.0) ThrowData("cost matrix entry is negative");
      cost_.push_back(v);
    }
  }
}

CostMatrix CostMatrix::Uniform(size_t num_classes, double off_diagonal) {
  std::vector<std::vector<double>> rows(num_classes,
                                        std::vector<double>(num_classes, off_diagonal));
  for (size_t i = 0; i < num_classes; ++i) rows[i][i] = 0.0;
  return CostMatrix(rows);
}

std::vector<std::vector<double>> CostMatrix::rows() const {
  std::vector<std::vector<double>> out(k_);
  for (size_t i = 0; i < k_; ++i) {
    out[i].assign(cost_.begin() + static_cast<long>(i * k_),
                  cost_.begin() + static_cast<long>((i + 1) * k_));
  }
  return out;
}

CostMatrix CostMatrix::Scaled(double factor) const {
  auto r = rows();
  for (auto& row : r) {
    for (double& v : row) v *= factor;
  }
  return CostMatrix(r);
}

CostMatrix DefaultCostMatrix(std::span<const size_t> class_counts) {
  const size_t k = class_counts.size();
  if (k < 2) ThrowData("cost matrix needs at least 2 classes");
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < k; ++i) {
    if (class_counts[i] == 0) {
      ThrowData("empty class: class " + std::to_string(i) + " has no samples");
    }
  }
  for (size_t i = 0; i < k; ++i) {
    const double ni = static_cast<double>(class_counts[i]);
    for (size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      rows[i][j] = (ni + static_cast<double>(class_counts[j])) / ni;
    }
  }
  return CostMatrix(rows);
}

std::string ValidationReport::Describe() const {
  std::string out;
  for (const auto& v : violations) {
    out += "row " + std::to_string(v.row) + ": correct-class cost C[" +
           std::to_string(v.row) + "][" + std::to_string(v.row) +
           "] is not below C[" + std::to_string(v.row) + "][" +
           std::to_string(v.column) + "]\n";
  }
  for (const auto& w : warnings) {
    out += "column " + std::to_string(w.dominant) + " dominates column " +
           std::to_string(w.dominated) + "\n";
  }
  return out;
}

ValidationReport Validate(const CostMatrix& m) {
  ValidationReport report;
  const size_t k = m.num_classes();
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (j != i && m.at(i, i) >= m.at(i, j)) report.violations.push_back({i, j});
    }
  }
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      bool all_ge = true;
      bool some_gt = false;
      for (size_t i = 0; i < k && all_ge; ++i) {
        all_ge = m.at(i, a) >= m.at(i, b);
        some_gt = some_gt || m.at(i, a) > m.at(i, b);
      }
      if (all_ge && some_gt) report.warnings.push_back({a, b});
    }
  }
  return report;
}

LoadedCostMatrix ParseCostMatrix(std::string_view content,
                                 std::optional<size_t> expected_classes) {
  auto records = text::ParseCsv(content);
  std::erase_if(records, [](const text::CsvRow& r) {
    return r.size() == 1 && text::Trim(r[0]).empty();
  });
  std::vector<std::vector<double>> rows;
  for (size_t r = 0; r < records.size(); ++r) {
    std::vector<double> row;
    for (const auto& cell : records[r]) {
      const auto v = text::ParseDouble(cell);
      if (!v) {
        ThrowData("cost matrix cell '" + cell + "' in row " +
                  std::to_string(r + 1) + " is not a number");
      }
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (expected_classes && rows.size() != *expected_classes) {
    ThrowData("cost matrix shape mismatch: " + std::to_string(rows.size()) +
              " rows for a dataset with " + std::to_string(*expected_classes) +
              " classes");
  }
  CostMatrix matrix(rows);
  auto report = Validate(matrix);
  if (!report.ok()) {
    ThrowData("cost matrix violates the reasonableness conditions:\n" +
              report.Describe());
  }
  return {std::move(matrix), std::move(report.warnings)};
}

LoadedCostMatrix LoadCostMatrix(const std::string& path,
                                std::optional<size_t> expected_classes) {
  return ParseCostMatrix(text::ReadFile(path), expected_classes);
}

}  // namespace cortex
