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

// Class-dependent misclassification costs.
//
// Convention: at(i, j) is the cost of classifying a sample whose ACTUAL class
// is i as class j (row = actual, column = predicted). Matrices read from disk
// follow the same convention and are never transposed.

#ifndef CORTEX_CORE_COST_MATRIX_HPP_
#define CORTEX_CORE_COST_MATRIX_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cortex {

class CostMatrix {
 public:
  // Throws Error(kData) unless rows form a K x K (K >= 2) table of finite,
  // nonnegative values. Reasonableness is checked by Validate(), not here.
  explicit CostMatrix(const std::vector<std::vector<double>>& rows);

  // Zero diagonal, `off_diagonal` everywhere else.
  static CostMatrix Uniform(size_t num_classes, double off_diagonal = 1.0);

  size_t num_classes() const { return k_; }
  double at(size_t actual, size_t predicted) const {
    return cost_[actual * k_ + predicted];
  }
  std::vector<std::vector<double>> rows() const;
  CostMatrix Scaled(double factor) const;

 private:
  size_t k_ = 0;
  std::vector<double> cost_;
};

// Off-diagonal C[i][j] = (N_i + N_j) / N_i, diagonal 0. Throws Error(kData)
// "empty class" on a zero count.
CostMatrix DefaultCostMatrix(std::span<const size_t> class_counts);

struct CostViolation {
  size_t row = 0;     // actual class
  size_t column = 0;  // predicted class with C[row][row] >= C[row][column]
};

// Column `dominant` costs at least as much as `dominated` in every row, and
// strictly more in at least one; predicting `dominant` is never optimal.
struct ColumnDominance {
  size_t dominant = 0;
  size_t dominated = 0;
};

struct ValidationReport {
  std::vector<CostViolation> violations;
  std::vector<ColumnDominance> warnings;

  bool ok() const { return violations.empty(); }
  std::string Describe() const;
};

ValidationReport Validate(const CostMatrix& matrix);

struct LoadedCostMatrix {
  CostMatrix matrix;
  std::vector<ColumnDominance> warnings;
};

// Headerless CSV, one row per actual class in lexicographic class order.
// Rejects a shape different from `expected_classes` (when given) and any hard
// violation.
LoadedCostMatrix ParseCostMatrix(std::string_view content,
                                 std::optional<size_t> expected_classes);
LoadedCostMatrix LoadCostMatrix(const std::string& path,
                                std::optional<size_t> expected_classes);

}  // namespace cortex

#endif  // CORTEX_CORE_COST_MATRIX_HPP_
