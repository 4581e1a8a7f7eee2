// Copyright 2026 The RefAgent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REFAGENT_TOOLCHAIN_LOGS_H_
#define REFAGENT_TOOLCHAIN_LOGS_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace refagent::toolchain {

enum class Severity { kError, kWarning };

struct Diagnostic {
  std::string file;
  int line = 0;  // 0 when the tool gave no position
  int column = 0;
  Severity severity = Severity::kError;
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Maven-style `[ERROR] path:[line,col] message` records and javac-style
/// `path:line: error: message` records, in order of first appearance with
/// exact duplicates removed. Everything else is ignored.
std::vector<Diagnostic> parse_compiler_log(std::string_view raw);

/// Maven-style rendering of one diagnostic.
std::string render(const Diagnostic& d);

struct TestFailure {
  std::string test_id;  // Class.method, fully qualified when the log says so
  std::string message;
  std::string trace_excerpt;
  friend bool operator==(const TestFailure&, const TestFailure&) = default;
};

struct TestOutcome {
  int total = 0;
  int passed = 0;
  int failed = 0;  // failures and errors
  int skipped = 0;
  std::vector<TestFailure> failures;
  std::string raw_log;

  bool all_passed() const { return failed == 0; }
};

/// Parses a Surefire-format test log. Totals come from the closing
/// `Tests run:` summary lines (summed across modules) or, lacking those, from
/// the per-class lines. When no summary exists but the log carries compiler
/// errors (test sources failed to compile), the outcome is a single failure
/// whose message lists them. Returns total = -1 when neither is present.
TestOutcome parse_test_log(std::string_view raw);

nlohmann::json to_json(const Diagnostic& d);
nlohmann::json to_json(const TestOutcome& t);

}  // namespace refagent::toolchain

#endif  // REFAGENT_TOOLCHAIN_LOGS_H_
