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

#ifndef CORTEX_CORE_ERROR_HPP_
#define CORTEX_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cortex {

// Values double as CLI exit codes and C API status codes.
enum class ErrorKind : int {
  kConfig = 1,
  kData = 2,
  kOracle = 3,
  kInternal = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void ThrowConfig(const std::string& message) {
  throw Error(ErrorKind::kConfig, message);
}
[[noreturn]] inline void ThrowData(const std::string& message) {
  throw Error(ErrorKind::kData, message);
}
[[noreturn]] inline void ThrowOracle(const std::string& message) {
  throw Error(ErrorKind::kOracle, message);
}
[[noreturn]] inline void ThrowInternal(const std::string& message) {
  throw Error(ErrorKind::kInternal, message);
}

}  // namespace cortex

#endif  // CORTEX_CORE_ERROR_HPP_
