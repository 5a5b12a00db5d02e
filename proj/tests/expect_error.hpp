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

#ifndef CORTEX_TESTS_EXPECT_ERROR_HPP_
#define CORTEX_TESTS_EXPECT_ERROR_HPP_

#include <gtest/gtest.h>

#include <string>

#include "core/error.hpp"

// Expects `stmt` to throw cortex::Error of `want` whose message contains
// `needle`.
#define EXPECT_CORTEX_ERROR(stmt, want, needle)                              \
  do {                                                                       \
    try {                                                                    \
      stmt;                                                                  \
      ADD_FAILURE() << "no exception from " #stmt;                           \
    } catch (const ::cortex::Error& e) {                                     \
      EXPECT_EQ(e.kind(), want) << e.what();                                 \
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)       \
          << "message '" << e.what() << "' lacks '" << needle << "'";        \
    }                                                                        \
  } while (0)

#endif  // CORTEX_TESTS_EXPECT_ERROR_HPP_
