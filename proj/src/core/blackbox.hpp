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

// Black-box predictions for surrogate training.
//
// Two sources are supported:
//  * a prediction file: CSV with a header, row-aligned with the source data
//    file, holding one class name per row in a label column;
//  * an oracle subprocess run through /bin/sh. The parent writes the encoded
//    feature matrix as CSV (header of feature names, '\n' line endings, '.'
//    decimals) to the child's stdin and closes it. The child must print
//    exactly one class name per data row to stdout, each terminated by '\n',
//    and exit with status 0. Anything else is an oracle error.

#ifndef CORTEX_CORE_BLACKBOX_HPP_
#define CORTEX_CORE_BLACKBOX_HPP_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "core/dataset.hpp"

namespace cortex {

struct PredictionFile {
  std::string path;
  // If the file has a single column it is used regardless of its name.
  std::string column = "prediction";
};

struct SubprocessOracle {
  std::string command;
  std::string working_directory;  // empty = inherit
  double timeout_seconds = 60.0;
};

using PredictorSource = std::variant<PredictionFile, SubprocessOracle>;

std::string DescribeSource(const PredictorSource& source);

// One class index per sample, in sample order. For prediction files the
// file must have one row per row of the source table and rows are picked by
// the samples' row ids.
std::vector<ClassIndex> GetPredictions(const PredictorSource& source,
                                       const Dataset& samples);

// Wire format helpers, exposed for tests.
std::string OracleRequest(const Dataset& samples);
std::vector<ClassIndex> ParseOracleResponse(std::string_view response, size_t rows,
                                            const FeatureSchema& schema);

struct ProcessResult {
  int exit_status = 0;
  std::string out;
  std::string err;
};

// Runs `sh -c command`, feeding `input` on stdin. Throws Error(kOracle) on
// spawn failure or timeout.
ProcessResult RunProcess(const std::string& command, const std::string& working_directory,
                         std::string_view input, double timeout_seconds);

}  // namespace cortex

#endif  // CORTEX_CORE_BLACKBOX_HPP_
