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

#include "refagent/toolchain/build.h"

#include <cstdlib>
#include <regex>

#include "refagent/error.h"
#include "refagent/toolchain/process.h"
#include "refagent/util/files.h"

namespace refagent::toolchain {

namespace fs = std::filesystem;

namespace {

std::string expand_env(const std::string& arg) {
  static const std::regex kVar(R"(\$\{([A-Za-z_][A-Za-z0-9_]*)\})");
  std::string out;
  auto begin = std::sregex_iterator(arg.begin(), arg.end(), kVar);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const std::smatch& m = *it;
    const char* value = std::getenv(m[1].str().c_str());
    if (!value) throw ToolError("environment variable " + m[1].str() + " is not set");
    out += arg.substr(last, static_cast<std::size_t>(m.position(0)) - last) + value;
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
  }
  return out + arg.substr(last);
}

std::vector<std::string> expand_all(const std::vector<std::string>& argv) {
  std::vector<std::string> out;
  for (const auto& a : argv) out.push_back(expand_env(a));
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string log_tail(const std::string& log, std::size_t max_lines = 20) {
  std::size_t start = log.size();
  for (std::size_t n = 0; n <= max_lines; ++n) {
    if (start == 0) return log;
    auto nl = log.rfind('\n', start - 1);
    if (nl == std::string::npos) return log;
    start = nl;
  }
  return log.substr(start + 1);
}

}  // namespace

const char* to_string(BuildStatus status) {
  switch (status) {
    case BuildStatus::kSuccess: return "success";
    case BuildStatus::kFailure: return "failure";
    case BuildStatus::kToolError: return "tool_error";
  }
  return "tool_error";
}

std::vector<Diagnostic> BuildOutcome::errors() const {
  std::vector<Diagnostic> out;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) out.push_back(d);
  }
  return out;
}

nlohmann::json to_json(const BuildOutcome& b) {
  nlohmann::json diagnostics = nlohmann::json::array();
  for (const auto& d : b.diagnostics) diagnostics.push_back(to_json(d));
  return {{"status", to_string(b.status)}, {"diagnostics", diagnostics}};
}

std::vector<std::string> MavenAdapter::compile_command() const {
  return {mvn_, "-q", "-B", "compile", "-DskipTests"};
}

std::vector<std::string> MavenAdapter::test_command(const std::vector<std::string>& tests) const {
  std::vector<std::string> argv = {mvn_, "-q", "-B", "test"};
  if (!tests.empty()) {
    argv.push_back("-Dtest=" + join(tests, ","));
    argv.push_back("-Dsurefire.failIfNoSpecifiedTests=false");
  }
  return argv;
}

std::unique_ptr<CommandAdapter> CommandAdapter::load(const fs::path& descriptor) {
  auto adapter = std::make_unique<CommandAdapter>();
  try {
    auto j = nlohmann::json::parse(util::read_file(descriptor));
    adapter->compile_ = j.at("compile").get<std::vector<std::string>>();
    adapter->test_ = j.at("test").get<std::vector<std::string>>();
    adapter->filter_ = j.value("test_filter", std::vector<std::string>{});
    adapter->timeout_seconds = j.value("timeout_seconds", kDefaultTimeoutSeconds);
  } catch (const nlohmann::json::exception& e) {
    throw ToolError(descriptor.string() + ": " + e.what());
  } catch (const Error& e) {
    throw ToolError(e.what());
  }
  if (adapter->compile_.empty() || adapter->test_.empty()) {
    throw ToolError(descriptor.string() + ": compile and test commands must be non-empty");
  }
  return adapter;
}

std::vector<std::string> CommandAdapter::compile_command() const { return expand_all(compile_); }

std::vector<std::string> CommandAdapter::test_command(const std::vector<std::string>& tests) const {
  std::vector<std::string> argv = expand_all(test_);
  if (tests.empty()) return argv;
  const std::string joined = join(tests, ",");
  for (std::string a : filter_) {
    for (std::size_t p; (p = a.find("{tests}")) != std::string::npos;) a.replace(p, 7, joined);
    argv.push_back(expand_env(a));
  }
  return argv;
}

std::unique_ptr<BuildAdapter> detect_adapter(const fs::path& workspace) {
  if (fs::exists(workspace / kBuildDescriptor)) return CommandAdapter::load(workspace / kBuildDescriptor);
  if (fs::exists(workspace / "pom.xml")) return std::make_unique<MavenAdapter>();
  throw ToolError("no build descriptor (refagent-build.json or pom.xml) in " + workspace.string());
}

BuildOutcome compile_project(const fs::path& workspace, const BuildAdapter& adapter) {
  CommandResult r = run_command(adapter.compile_command(), workspace, adapter.timeout_seconds);
  BuildOutcome outcome;
  outcome.raw_log = r.output;
  outcome.duration_seconds = r.duration_seconds;
  outcome.diagnostics = parse_compiler_log(r.output);
  if (r.exit_code == 0) {
    outcome.status = BuildStatus::kSuccess;
    // A zero exit wins over stray error-looking lines.
    std::erase_if(outcome.diagnostics,
                  [](const Diagnostic& d) { return d.severity == Severity::kError; });
    return outcome;
  }
  if (outcome.errors().empty()) {
    throw ToolError(adapter.name() + " exited with status " + std::to_string(r.exit_code) +
                    " without compiler errors:\n" + log_tail(r.output));
  }
  outcome.status = BuildStatus::kFailure;
  return outcome;
}

TestOutcome run_tests(const fs::path& workspace, const BuildAdapter& adapter,
                      const std::optional<std::vector<std::string>>& filter) {
  CommandResult r = run_command(adapter.test_command(filter.value_or(std::vector<std::string>{})),
                                workspace, adapter.timeout_seconds);
  TestOutcome outcome = parse_test_log(r.output);
  if (outcome.total < 0) {
    if (r.exit_code == 0) {
      // Nothing ran (e.g. an empty suite); the tool reported success.
      outcome.total = 0;
      return outcome;
    }
    throw ToolError(adapter.name() + " test run exited with status " +
                    std::to_string(r.exit_code) + " without a test summary:\n" +
                    log_tail(r.output));
  }
  if (r.exit_code != 0 && outcome.all_passed()) {
    throw ToolError(adapter.name() + " test run exited with status " +
                    std::to_string(r.exit_code) + " although all tests passed:\n" +
                    log_tail(r.output));
  }
  return outcome;
}

}  // namespace refagent::toolchain
