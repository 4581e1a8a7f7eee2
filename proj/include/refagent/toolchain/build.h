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

#ifndef REFAGENT_TOOLCHAIN_BUILD_H_
#define REFAGENT_TOOLCHAIN_BUILD_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "refagent/toolchain/logs.h"

namespace refagent::toolchain {

enum class BuildStatus { kSuccess, kFailure, kToolError };

const char* to_string(BuildStatus status);

struct BuildOutcome {
  BuildStatus status = BuildStatus::kSuccess;
  std::vector<Diagnostic> diagnostics;
  std::string raw_log;
  double duration_seconds = 0;

  std::vector<Diagnostic> errors() const;
};

nlohmann::json to_json(const BuildOutcome& b);

inline constexpr int kDefaultTimeoutSeconds = 600;

/// How one build system compiles and tests a workspace.
class BuildAdapter {
 public:
  virtual ~BuildAdapter() = default;
  virtual std::string name() const = 0;
  virtual std::vector<std::string> compile_command() const = 0;
  /// `tests` holds test class names (simple or fully qualified); empty
  /// means the whole suite.
  virtual std::vector<std::string> test_command(const std::vector<std::string>& tests) const = 0;

  int timeout_seconds = kDefaultTimeoutSeconds;
};

/// `mvn -q -B compile -DskipTests` and `mvn -q -B test [-Dtest=A,B]`.
class MavenAdapter : public BuildAdapter {
 public:
  explicit MavenAdapter(std::string mvn = "mvn") : mvn_(std::move(mvn)) {}
  std::string name() const override { return "maven"; }
  std::vector<std::string> compile_command() const override;
  std::vector<std::string> test_command(const std::vector<std::string>& tests) const override;

 private:
  std::string mvn_;
};

/// Command lines read from a `refagent-build.json` descriptor:
///   {"compile": [argv...], "test": [argv...],
///    "test_filter": [argv...], "timeout_seconds": n}
/// `${NAME}` is replaced by the environment variable NAME (unset: ToolError)
/// and `{tests}` in test_filter by the comma-joined test names. The filter
/// arguments are appended to the test command only when a filter is given.
class CommandAdapter : public BuildAdapter {
 public:
  static std::unique_ptr<CommandAdapter> load(const std::filesystem::path& descriptor);
  std::string name() const override { return "command"; }
  std::vector<std::string> compile_command() const override;
  std::vector<std::string> test_command(const std::vector<std::string>& tests) const override;

 private:
  std::vector<std::string> compile_;
  std::vector<std::string> test_;
  std::vector<std::string> filter_;
};

inline constexpr const char* kBuildDescriptor = "refagent-build.json";

/// refagent-build.json first, then pom.xml; ToolError when neither exists.
std::unique_ptr<BuildAdapter> detect_adapter(const std::filesystem::path& workspace);

/// Runs the compile command. Exit 0 is success; a non-zero exit with error
/// diagnostics is a failure; any other non-zero exit throws ToolError.
BuildOutcome compile_project(const std::filesystem::path& workspace, const BuildAdapter& adapter);

/// Runs the test command, restricted to `filter` when given. Throws
/// ToolError when the log holds neither test counts nor compiler errors, or
/// when the tool exits non-zero although every test passed.
TestOutcome run_tests(const std::filesystem::path& workspace, const BuildAdapter& adapter,
                      const std::optional<std::vector<std::string>>& filter = std::nullopt);

}  // namespace refagent::toolchain

#endif  // REFAGENT_TOOLCHAIN_BUILD_H_
