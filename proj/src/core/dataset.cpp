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

#include "core/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cortex {

std::optional<ClassIndex> FeatureSchema::FindClass(std::string_view name) const {
  const auto it = std::lower_bound(class_names.begin(), class_names.end(), name);
  if (it == class_names.end() || *it != name) return std::nullopt;
  return static_cast<ClassIndex>(it - class_names.begin());
}

std::optional<size_t> FeatureSchema::FindFeature(std::string_view name) const {
  for (size_t j = 0; j < features.size(); ++j) {
    if (features[j].name == name) return j;
  }
  return std::nullopt;
}

std::vector<std::string> FeatureSchema::FeatureNames() const {
  std::vector<std::string> names;
  names.reserve(features.size());
  for (const auto& f : features) names.push_back(f.name);
  return names;
}

Dataset::Dataset(std::shared_ptr<const FeatureSchema> schema,
                 std::vector<double> values, std::vector<ClassIndex> labels,
                 std::vector<size_t> row_ids, size_t source_rows)
    : schema_(std::move(schema)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      row_ids_(std::move(row_ids)),
      source_rows_(source_rows) {
  if (!schema_) ThrowInternal("dataset without schema");
  const size_t p = schema_->num_features();
  const size_t k = schema_->num_classes();
  if (p == 0) ThrowData("dataset has no feature columns");
  if (labels_.empty()) ThrowData("dataset has no rows");
  if (values_.size() != labels_.size() * p) {
    ThrowInternal("feature matrix size does not match rows x features");
  }
  class_counts_.assign(k, 0);
  for (ClassIndex y : labels_) {
    if (y < 0 || static_cast<size_t>(y) >= k) {
      ThrowData("label index " + std::to_string(y) + " out of range");
    }
    ++class_counts_[static_cast<size_t>(y)];
  }
  if (row_ids_.empty()) {
    row_ids_.resize(labels_.size());
    std::iota(row_ids_.begin(), row_ids_.end(), size_t{0});
    if (source_rows_ == 0) source_rows_ = labels_.size();
  }
  if (row_ids_.size() != labels_.size()) {
    ThrowInternal("row id count does not match row count");
  }
  for (size_t id : row_ids_) {
    if (id >= source_rows_) ThrowInternal("row id beyond source table");
  }
}

Dataset Dataset::Subset(std::span<const size_t> indices) const {
  const size_t p = num_features();
  std::vector<double> values;
  values.reserve(indices.size() * p);
  std::vector<ClassIndex> labels;
  std::vector<size_t> ids;
  labels.reserve(indices.size());
  ids.reserve(indices.size());
  for (size_t i : indices) {
    if (i >= num_rows()) ThrowInternal("subset index out of range");
    const auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
    ids.push_back(row_ids_[i]);
  }
  return Dataset(schema_, std::move(values), std::move(labels), std::move(ids),
                 source_rows_);
}

Dataset Dataset::WithLabels(std::vector<ClassIndex> labels) const {
  if (labels.size() != num_rows()) {
    ThrowData("label vector length " + std::to_string(labels.size()) +
              " does not match " + std::to_string(num_rows()) + " rows");
  }
  return Dataset(schema_, values_, std::move(labels), row_ids_, source_rows_);
}

Dataset Dataset::WithValues(std::vector<double> values) const {
  return Dataset(schema_, std::move(values), labels_, row_ids_, source_rows_);
}

std::vector<double> Dataset::FeatureStdDev() const {
  const size_t n = num_rows();
  const size_t p = num_features();
  std::vector<double> mean(p, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < p; ++j) mean[j] += at(i, j);
  }
  for (double& m : mean) m /= static_cast<double>(n);
  std::vector<double> var(p, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < p; ++j) {
      const double d = at(i, j) - mean[j];
      var[j] += d * d;
    }
  }
  std::vector<double> sd(p);
  for (size_t j = 0; j < p; ++j) {
    sd[j] = std::sqrt(var[j] / static_cast<double>(n));
  }
  return sd;
}

RawTable ParseCsvTable(std::string_view content, const std::string& target) {
  auto records = text::ParseCsv(content);
  // Blank lines parse as a single empty field.
  std::erase_if(records, [](const text::CsvRow& r) {
    return r.size() == 1 && text::Trim(r[0]).empty();
  });
  if (records.empty()) ThrowData("empty table: no header row");

  RawTable raw;
  raw.columns = std::move(records.front());
  for (auto& c : raw.columns) c = std::string(text::Trim(c));
  raw.target = target;
  const auto it = std::find(raw.columns.begin(), raw.columns.end(), target);
  if (it == raw.columns.end()) {
    ThrowData("target column not found: '" + target + "'");
  }
  raw.target_index = static_cast<size_t>(it - raw.columns.begin());
  if (raw.columns.size() < 2) ThrowData("table has no feature columns");
  {
    std::set<std::string> seen;
    for (const auto& c : raw.columns) {
      if (!seen.insert(c).second) ThrowData("duplicate column name '" + c + "'");
    }
  }

  for (size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    if (rec.size() != raw.columns.size()) {
      ThrowData("ragged row " + std::to_string(r + 1) + ": expected " +
                std::to_string(raw.columns.size()) + " cells, found " +
                std::to_string(rec.size()));
    }
    for (size_t c = 0; c < rec.size(); ++c) {
      rec[c] = std::string(text::Trim(rec[c]));
      if (rec[c].empty()) {
        ThrowData("missing value in row " + std::to_string(r + 1) +
                  ", column '" + raw.columns[c] + "'");
      }
    }
    raw.rows.push_back(std::move(rec));
  }
  if (raw.rows.empty()) ThrowData("empty table: header only, no data rows");

  std::set<std::string_view> classes;
  for (const auto& row : raw.rows) classes.insert(row[raw.target_index]);
  if (classes.size() < 2) {
    ThrowData("target column '" + target + "' has fewer than 2 distinct values");
  }
  return raw;
}

RawTable LoadCsv(const std::string& path, const std::string& target) {
  return ParseCsvTable(text::ReadFile(path), target);
}

Dataset Encode(const RawTable& raw) {
  const size_t n = raw.rows.size();
  auto schema = std::make_shared<FeatureSchema>();

  {
    std::set<std::string> names;
    for (const auto& row : raw.rows) names.insert(row[raw.target_index]);
    schema->class_names.assign(names.begin(), names.end());
  }

  // Column-major staging, then transposed into the row-major matrix.
  std::vector<std::vector<double>> columns;
  for (size_t c = 0; c < raw.columns.size(); ++c) {
    if (c == raw.target_index) continue;
    std::vector<double> parsed(n);
    size_t numeric = 0;
    for (size_t i = 0; i < n; ++i) {
      if (auto v = text::ParseDouble(raw.rows[i][c])) {
        parsed[i] = *v;
        ++numeric;
      }
    }
    if (numeric == n) {
      schema->features.push_back({raw.columns[c], FeatureKind::kNumeric, "", ""});
      columns.push_back(std::move(parsed));
      continue;
    }
    if (numeric > 0) {
      ThrowData("mixed column '" + raw.columns[c] + "': " +
                std::to_string(numeric) + " numeric and " +
                std::to_string(n - numeric) + " non-numeric cells");
    }
    std::set<std::string> categories;
    for (const auto& row : raw.rows) categories.insert(row[c]);
    for (const auto& cat : categories) {
      schema->features.push_back(
          {raw.columns[c] + "=" + cat, FeatureKind::kOneHot, raw.columns[c], cat});
      std::vector<double> indicator(n);
      for (size_t i = 0; i < n; ++i) {
        indicator[i] = raw.rows[i][c] == cat ? 1.0 : 0.0;
      }
      columns.push_back(std::move(indicator));
    }
  }

  const size_t p = columns.size();
  std::vector<double> values(n * p);
  for (size_t j = 0; j < p; ++j) {
    for (size_t i = 0; i < n; ++i) values[i * p + j] = columns[j][i];
  }
  std::vector<ClassIndex> labels(n);
  for (size_t i = 0; i < n; ++i) {
    labels[i] = *schema->FindClass(raw.rows[i][raw.target_index]);
  }
  return Dataset(std::move(schema), std::move(values), std::move(labels));
}

std::string EncodedCsv(const Dataset& data, const std::string& target_name) {
  std::vector<std::string> header = data.schema().FeatureNames();
  header.push_back(target_name);
  std::string out = text::CsvLine(header) + "\n";
  std::vector<std::string> fields(header.size());
  for (size_t i = 0; i < data.num_rows(); ++i) {
    for (size_t j = 0; j < data.num_features(); ++j) {
      fields[j] = text::FormatDouble(data.at(i, j));
    }
    fields.back() =
        data.schema().class_names[static_cast<size_t>(data.labels()[i])];
    out += text::CsvLine(fields) + "\n";
  }
  return out;
}

namespace {

size_t FloorShare(size_t count, double fraction) {
  // 90 * 0.7 evaluates to 62.999999999999993 in binary floating point.
  return static_cast<size_t>(
      std::floor(static_cast<double>(count) * fraction + 1e-9));
}

}  // namespace

SplitIndices SplitDataset(const Dataset& data, double train_fraction,
                          uint64_t seed, bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    ThrowConfig("train fraction must lie in (0, 1), got " +
                text::FormatDouble(train_fraction));
  }
  const size_t n = data.num_rows();
  const size_t target_train = FloorShare(n, train_fraction);
  std::mt19937_64 rng(seed);
  SplitIndices out;

  if (!stratified) {
    if (target_train == 0 || target_train == n) {
      ThrowConfig("split of " + std::to_string(n) + " rows at fraction " +
                  text::FormatDouble(train_fraction) +
                  " leaves a partition empty");
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    out.train.assign(order.begin(), order.begin() + static_cast<long>(target_train));
    out.test.assign(order.begin() + static_cast<long>(target_train), order.end());
  } else {
    const size_t k = data.num_classes();
    const auto counts = data.class_counts();
    for (size_t c = 0; c < k; ++c) {
      if (counts[c] == 1) {
        ThrowData("class '" + data.schema().class_names[c] +
                  "' has a single sample; stratified split needs at least 2");
      }
    }
    std::vector<size_t> share(k, 0);
    size_t assigned = 0;
    for (size_t c = 0; c < k; ++c) {
      share[c] = FloorShare(counts[c], train_fraction);
      assigned += share[c];
    }
    // Largest remainder; ties go to the lowest class index.
    std::vector<size_t> by_remainder(k);
    std::iota(by_remainder.begin(), by_remainder.end(), size_t{0});
    std::stable_sort(by_remainder.begin(), by_remainder.end(),
                     [&](size_t a, size_t b) {
                       const double ra = static_cast<double>(counts[a]) * train_fraction -
                                         static_cast<double>(share[a]);
                       const double rb = static_cast<double>(counts[b]) * train_fraction -
                                         static_cast<double>(share[b]);
                       return ra > rb;
                     });
    for (size_t c : by_remainder) {
      if (assigned >= target_train) break;
      if (share[c] < counts[c]) {
        ++share[c];
        ++assigned;
      }
    }
    for (size_t c = 0; c < k; ++c) {
      if (counts[c] >= 2) share[c] = std::clamp<size_t>(share[c], 1, counts[c] - 1);
    }

    std::vector<std::vector<size_t>> members(k);
    for (size_t i = 0; i < n; ++i) {
      members[static_cast<size_t>(data.labels()[i])].push_back(i);
    }
    for (size_t c = 0; c < k; ++c) {
      auto& m = members[c];
      std::shuffle(m.begin(), m.end(), rng);
      out.train.insert(out.train.end(), m.begin(), m.begin() + static_cast<long>(share[c]));
      out.test.insert(out.test.end(), m.begin() + static_cast<long>(share[c]), m.end());
    }
    if (out.train.empty() || out.test.empty()) {
      ThrowConfig("stratified split leaves a partition empty");
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<Dataset, Dataset> Split(const Dataset& data, double train_fraction,
                                  uint64_t seed, bool stratified) {
  const auto idx = SplitDataset(data, train_fraction, seed, stratified);
  return {data.Subset(idx.train), data.Subset(idx.test)};
}

Dataset Perturb(const Dataset& data, double sigma,
                std::span<const double> feature_scales, uint64_t seed) {
  const size_t p = data.num_features();
  if (feature_scales.size() != p) {
    ThrowData("feature scale length " + std::to_string(feature_scales.size()) +
              " does not match " + std::to_string(p) + " features");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    ThrowConfig("noise sigma must be a finite nonnegative number");
  }
  for (double s : feature_scales) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      ThrowData("feature scales must be finite and nonnegative");
    }
  }
  std::vector<double> values(data.values().begin(), data.values().end());
  if (sigma == 0.0) return data.WithValues(std::move(values));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (size_t i = 0; i < data.num_rows(); ++i) {
    for (size_t j = 0; j < p; ++j) {
      const double z = noise(rng);
      const double sd = sigma * feature_scales[j];
      if (sd > 0.0) values[i * p + j] += sd * z;
    }
  }
  return data.WithValues(std::move(values));
}

}  // namespace cortex
