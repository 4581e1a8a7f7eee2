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

#ifndef REFAGENT_TOOLCHAIN_JAVACHECK_H_
#define REFAGENT_TOOLCHAIN_JAVACHECK_H_

#include <filesystem>
#include <string>
#include <vector>

#include "refagent/source/design_model.h"
#include "refagent/toolchain/logs.h"

// An offline stand-in for `javac` plus a JUnit runner, used when no JDK is
// available. Compilation is a static check: every file must parse, the
// design must build, written type names must resolve, and calls through a
// receiver of a project type must name a method or constructor of matching
// arity. Tests are API-contract tests: a @Test method passes when every
// project call it makes resolves and its literal-only assertions hold.
namespace refagent::toolchain::javacheck {

struct CompileReport {
  int files = 0;
  std::vector<Diagnostic> errors;  // paths relative to the project root
};

/// Checks main sources, plus test sources when `with_tests` is set.
CompileReport compile(const std::filesystem::path& root, bool with_tests,
                      const source::ProjectLayout& layout = {});

/// Maven-style log: `[ERROR] path:[line,col] message` lines, BUILD SUCCESS
/// or BUILD FAILURE. Contains no timings.
std::string render_compile_log(const CompileReport& report);

enum class TestStatus { kPass, kFailure, kError, kSkipped };

struct TestResult {
  std::string test_class;  // FQN
  std::string method;
  std::string file;  // relative path of the test class
  int line = 0;  // line of the failing statement, else the method's first line
  TestStatus status = TestStatus::kPass;
  std::string message;
};

struct TestRun {
  CompileReport compile;  // non-empty errors: nothing ran
  std::vector<TestResult> results;  // sorted by class, then declaration order
};

/// Runs every @Test method of the test classes named in `filter` (simple
/// names or FQNs; empty means all).
TestRun run_tests(const std::filesystem::path& root, const std::vector<std::string>& filter,
                  const source::ProjectLayout& layout = {});

/// Surefire-style log of a run. Contains no timings.
std::string render_test_log(const TestRun& run);

/// Entry point of the refagent-javacheck tool:
///   compile <root> | test <root> [--tests A,B]
int main(const std::vector<std::string>& args, std::string& out);

}  // namespace refagent::toolchain::javacheck

#endif  // REFAGENT_TOOLCHAIN_JAVACHECK_H_
