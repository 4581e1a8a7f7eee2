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

#ifndef REFAGENT_TOOLCHAIN_TESTGEN_H_
#define REFAGENT_TOOLCHAIN_TESTGEN_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace refagent::toolchain {

inline constexpr const char* kGeneratedPackage = "refagent_generated";

/// `<package>.refagent_generated`, or just the suffix for the default package.
std::string generated_package(const std::string& package);

/// Rewrites a test's package declaration to the generated package of
/// `package` and adds an on-demand import of the original package.
std::string relocate_test_source(const std::string& text, const std::string& package);

class TestGenerator {
 public:
  virtual ~TestGenerator() = default;
  virtual std::string name() const = 0;
  /// Writes tests for `fqn` under `<workspace>/<test_root>` and returns the
  /// created files (absolute). Throws GeneratorUnavailable or ToolError.
  virtual std::vector<std::filesystem::path> generate(const std::string& fqn,
                                                      const std::filesystem::path& workspace) = 0;

  std::string test_root = "src/test/java";
};

/// Installs pre-baked tests from `<stub_dir>/<fqn>/*.java`; a class without
/// a stub directory gets no tests.
class StubTestGenerator : public TestGenerator {
 public:
  explicit StubTestGenerator(std::filesystem::path stub_dir) : stub_dir_(std::move(stub_dir)) {}
  std::string name() const override { return "stub"; }
  std::vector<std::filesystem::path> generate(const std::string& fqn,
                                              const std::filesystem::path& workspace) override;

 private:
  std::filesystem::path stub_dir_;
};

/// Shells out to an external coverage-driven generator (EvoSuite by
/// default). `${CLASS}`, `${OUT}` and `${WORKSPACE}` in the argv template
/// are substituted; every .java file the tool writes under ${OUT} is
/// relocated into the generated package.
class ExternalTestGenerator : public TestGenerator {
 public:
  explicit ExternalTestGenerator(std::vector<std::string> argv = default_command(),
                                 int timeout_seconds = 600);
  static std::vector<std::string> default_command();
  std::string name() const override { return "external"; }
  std::vector<std::filesystem::path> generate(const std::string& fqn,
                                              const std::filesystem::path& workspace) override;

 private:
  std::vector<std::string> argv_;
  int timeout_seconds_;
};

/// Deletes every `refagent_generated` directory under the test root.
void remove_generated_tests(const std::filesystem::path& workspace,
                            const std::string& test_root = "src/test/java");

/// Test class FQNs derived from generated file paths.
std::vector<std::string> generated_test_classes(const std::vector<std::filesystem::path>& files,
                                                const std::filesystem::path& test_root_dir);

}  // namespace refagent::toolchain

#endif  // REFAGENT_TOOLCHAIN_TESTGEN_H_
