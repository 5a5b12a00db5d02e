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

// Tabular ingestion: CSV loading, one-hot encoding of nominal columns,
// reproducible train/test splits and Gaussian input perturbation.
//
// Datasets are immutable once built. Every random operation takes an explicit
// seed; there is no global generator.

#ifndef CORTEX_CORE_DATASET_HPP_
#define CORTEX_CORE_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cortex {

using ClassIndex = int;

struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string target;
  size_t target_index = 0;
};

enum class FeatureKind { kNumeric, kOneHot };

struct FeatureInfo {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  // Only meaningful for kOneHot.
  std::string source;
  std::string category;
};

struct FeatureSchema {
  std::vector<FeatureInfo> features;
  // Class index -> class name, in lexicographic order of names.
  std::vector<std::string> class_names;

  size_t num_features() const { return features.size(); }
  size_t num_classes() const { return class_names.size(); }
  std::optional<ClassIndex> FindClass(std::string_view name) const;
  std::optional<size_t> FindFeature(std::string_view name) const;
  std::vector<std::string> FeatureNames() const;
};

class Dataset {
 public:
  // `values` is row-major n x p. `row_ids` identifies each row in the source
  // table of `source_rows` rows; empty means 0..n-1 with source_rows = n.
  Dataset(std::shared_ptr<const FeatureSchema> schema, std::vector<double> values,
          std::vector<ClassIndex> labels, std::vector<size_t> row_ids = {},
          size_t source_rows = 0);

  size_t num_rows() const { return labels_.size(); }
  size_t num_features() const { return schema_->num_features(); }
  size_t num_classes() const { return schema_->num_classes(); }

  std::span<const double> row(size_t i) const {
    return {values_.data() + i * num_features(), num_features()};
  }
  double at(size_t i, size_t j) const { return values_[i * num_features() + j]; }
  std::span<const double> values() const { return values_; }
  std::span<const ClassIndex> labels() const { return labels_; }
  std::span<const size_t> class_counts() const { return class_counts_; }
  std::span<const size_t> row_ids() const { return row_ids_; }
  size_t source_rows() const { return source_rows_; }

  const FeatureSchema& schema() const { return *schema_; }
  const std::shared_ptr<const FeatureSchema>& schema_ptr() const {
    return schema_;
  }

  // Rows picked by position, in the given order. Row ids are carried along.
  Dataset Subset(std::span<const size_t> indices) const;
  // Same features and row ids, different labels (e.g. black-box predictions).
  Dataset WithLabels(std::vector<ClassIndex> labels) const;
  // Same labels and row ids, different feature matrix.
  Dataset WithValues(std::vector<double> values) const;

  // Population standard deviation of each feature column.
  std::vector<double> FeatureStdDev() const;

 private:
  std::shared_ptr<const FeatureSchema> schema_;
  std::vector<double> values_;
  std::vector<ClassIndex> labels_;
  std::vector<size_t> class_counts_;
  std::vector<size_t> row_ids_;
  size_t source_rows_ = 0;
};

RawTable LoadCsv(const std::string& path, const std::string& target);
RawTable ParseCsvTable(std::string_view content, const std::string& target);

Dataset Encode(const RawTable& raw);

// Dump of the encoded table; one-hot columns are named `source=category`
// and the class column keeps the original target name.
std::string EncodedCsv(const Dataset& data, const std::string& target_name);

struct SplitIndices {
  std::vector<size_t> train;
  std::vector<size_t> test;
};

// Train gets floor(n * fraction) rows. Under stratification the per-class
// shares are floor(N_i * fraction) plus largest-remainder distribution of
// the leftover, clamped so every class with >= 2 rows lands on both sides.
// Index lists are sorted ascending.
SplitIndices SplitDataset(const Dataset& data, double train_fraction,
                          uint64_t seed, bool stratified);
std::pair<Dataset, Dataset> Split(const Dataset& data, double train_fraction,
                                  uint64_t seed, bool stratified);

// x_ij + N(0, (sigma * feature_scales[j])^2), drawn in row-major order.
Dataset Perturb(const Dataset& data, double sigma,
                std::span<const double> feature_scales, uint64_t seed);

}  // namespace cortex

#endif  // CORTEX_CORE_DATASET_HPP_
