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

// Shared fixtures for the unit and acceptance tests.

#ifndef CORTEX_TESTS_SUPPORT_HPP_
#define CORTEX_TESTS_SUPPORT_HPP_

#include <cstdio>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "core/cost_matrix.hpp"
#include "core/dataset.hpp"

namespace cortex::testing {

inline std::string SourcePath(const std::string& relative) {
  return std::string(CORTEX_SOURCE_DIR) + "/" + relative;
}

// Class names c00, c01, ... so that index order equals name order.
inline std::shared_ptr<const FeatureSchema> NumericSchema(size_t features, size_t classes) {
  auto schema = std::make_shared<FeatureSchema>();
  for (size_t j = 0; j < features; ++j) {
    schema->features.push_back({"x" + std::to_string(j), FeatureKind::kNumeric, "", ""});
  }
  for (size_t k = 0; k < classes; ++k) {
    char name[24];
    std::snprintf(name, sizeof(name), "c%02zu", k);
    schema->class_names.emplace_back(name);
  }
  return schema;
}

inline Dataset MakeDataset(size_t features, size_t classes, std::vector<double> values,
                           std::vector<ClassIndex> labels) {
  return Dataset(NumericSchema(features, classes), std::move(values), std::move(labels));
}

// Uniform features; `levels` > 0 draws from {0..levels-1} to force ties.
inline Dataset RandomDataset(std::mt19937_64& rng, size_t n, size_t p, size_t k,
                             int levels = 0) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> lv(0, levels > 0 ? levels - 1 : 0);
  std::uniform_int_distribution<int> cls(0, static_cast<int>(k) - 1);
  std::vector<double> values(n * p);
  for (auto& v : values) v = levels > 0 ? lv(rng) : u(rng);
  std::vector<ClassIndex> labels(n);
  for (auto& l : labels) l = cls(rng);
  return MakeDataset(p, k, std::move(values), std::move(labels));
}

// Random valid matrix: zero diagonal, off-diagonal in (0, 10].
inline CostMatrix RandomCostMatrix(std::mt19937_64& rng, size_t k) {
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (i != j) rows[i][j] = u(rng);
    }
  }
  return CostMatrix(rows);
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("cortex_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace cortex::testing

#endif  // CORTEX_TESTS_SUPPORT_HPP_
