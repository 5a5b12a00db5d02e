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

// Small text helpers shared by the CSV readers and the report writers.

#ifndef CORTEX_CORE_TEXT_HPP_
#define CORTEX_CORE_TEXT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cortex::text {

using CsvRow = std::vector<std::string>;

// RFC-4180 parsing: quoted fields, doubled quotes, CRLF or LF records. A
// trailing newline does not produce an empty record. Throws Error(kData) on
// an unterminated quote.
std::vector<CsvRow> ParseCsv(std::string_view content);

// Reads a whole file; throws Error(kData) if it cannot be opened.
std::string ReadFile(const std::string& path);

// Full-match decimal parse with '.' as separator. Surrounding ASCII blanks
// are ignored; NaN and infinities are rejected.
std::optional<double> ParseDouble(std::string_view cell);

// Shortest representation that round-trips exactly.
std::string FormatDouble(double value);

// Fixed-point formatting, e.g. FormatFixed(0.69501, 3) == "0.695".
std::string FormatFixed(double value, int decimals);

std::string CsvEscape(std::string_view field);
std::string CsvLine(std::span<const std::string> fields);

std::string_view Trim(std::string_view s);

std::string JoinDoubles(std::span<const double> values, std::string_view sep);

}  // namespace cortex::text

#endif  // CORTEX_CORE_TEXT_HPP_
