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

#include "refagent/toolchain/logs.h"

#include <regex>
#include <set>
#include <sstream>
#include <tuple>

namespace refagent::toolchain {

namespace {

std::vector<std::string> split_lines(std::string_view raw) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : raw) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(std::move(cur));
  return lines;
}

std::string strip_ansi(const std::string& s) {
  static const std::regex kAnsi("\x1b\\[[0-9;]*m");
  return std::regex_replace(s, kAnsi, "");
}

// JUnit 4 prints `method(pkg.Class)`; normalize it to `pkg.Class.method`.
std::string normalize_test_id(const std::string& id) {
  static const std::regex kJunit4(R"(^([\w$]+)\(([\w.$]+)\)$)");
  std::smatch m;
  if (std::regex_match(id, m, kJunit4)) return m[2].str() + "." + m[1].str();
  return id;
}

}  // namespace

std::vector<Diagnostic> parse_compiler_log(std::string_view raw) {
  static const std::regex kMaven(
      R"(^\[(ERROR|WARNING)\]\s+(\S.*?\.java):(?:\[(\d+)(?:,(\d+))?\])?\s*(.*)$)");
  static const std::regex kJavac(R"(^(\S.*?\.java):(\d+):\s*(error|warning):\s*(.*)$)");
  std::vector<Diagnostic> out;
  std::set<std::tuple<std::string, int, int, int, std::string>> seen;
  for (const auto& original : split_lines(raw)) {
    std::string line = strip_ansi(original);
    std::smatch m;
    Diagnostic d;
    if (std::regex_match(line, m, kMaven)) {
      d.severity = m[1] == "ERROR" ? Severity::kError : Severity::kWarning;
      d.file = m[2];
      d.line = m[3].matched ? std::stoi(m[3]) : 0;
      d.column = m[4].matched ? std::stoi(m[4]) : 0;
      d.message = m[5];
    } else if (std::regex_match(line, m, kJavac)) {
      d.file = m[1];
      d.line = std::stoi(m[2]);
      d.severity = m[3] == "error" ? Severity::kError : Severity::kWarning;
      d.message = m[4];
    } else {
      continue;
    }
    // `[ERROR] path.java` without a message is a file header, not a record.
    if (d.message.empty()) continue;
    auto key = std::make_tuple(d.file, d.line, d.column, static_cast<int>(d.severity), d.message);
    if (seen.insert(key).second) out.push_back(std::move(d));
  }
  return out;
}

std::string render(const Diagnostic& d) {
  std::string out = d.severity == Severity::kError ? "[ERROR] " : "[WARNING] ";
  out += d.file + ":";
  if (d.line > 0) {
    out += "[" + std::to_string(d.line);
    if (d.column > 0) out += "," + std::to_string(d.column);
    out += "]";
  }
  return out + " " + d.message;
}

TestOutcome parse_test_log(std::string_view raw) {
  static const std::regex kCounts(
      R"(Tests run:\s*(\d+),\s*Failures:\s*(\d+),\s*Errors:\s*(\d+),\s*Skipped:\s*(\d+)(.*)$)");
  static const std::regex kFailureHeader(
      R"(^\[(?:ERROR|INFO|WARNING)\]\s+(\S+)\s+(?:--\s+)?(?:Time elapsed:[^<]*)?<<<\s*(FAILURE|ERROR)!\s*$)");
  TestOutcome outcome;
  outcome.raw_log = std::string(raw);
  auto lines = split_lines(raw);

  int agg[4] = {0, 0, 0, 0};
  int per_class[4] = {0, 0, 0, 0};
  bool have_agg = false, have_per_class = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = strip_ansi(lines[i]);
    std::smatch m;
    if (std::regex_search(line, m, kCounts)) {
      std::string tail = m[5];
      int* target = agg;
      if (tail.find(" in ") != std::string::npos || tail.find("Time elapsed") != std::string::npos) {
        target = per_class;
        have_per_class = true;
      } else {
        have_agg = true;
      }
      for (int k = 0; k < 4; ++k) target[k] += std::stoi(m[k + 1]);
      continue;
    }
    if (std::regex_match(line, m, kFailureHeader) && m[1] != "Tests") {
      TestFailure f;
      f.test_id = normalize_test_id(m[1]);
      std::size_t j = i + 1;
      while (j < lines.size() && strip_ansi(lines[j]).empty()) ++j;
      if (j < lines.size() && !lines[j].starts_with("\tat ") && !lines[j].starts_with("[")) {
        f.message = strip_ansi(lines[j]);
        ++j;
      }
      std::vector<std::string> trace;
      while (j < lines.size() && (lines[j].starts_with("\tat ") || lines[j].starts_with("    at "))) {
        if (trace.size() < 5) trace.push_back(lines[j].substr(lines[j].find("at ")));
        ++j;
      }
      for (std::size_t k = 0; k < trace.size(); ++k) f.trace_excerpt += (k ? "\n" : "") + trace[k];
      outcome.failures.push_back(std::move(f));
    }
  }

  const int* counts = have_agg ? agg : have_per_class ? per_class : nullptr;
  if (!counts) {
    auto diagnostics = parse_compiler_log(raw);
    std::string listing;
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::kError) listing += render(d) + "\n";
    }
    if (listing.empty()) {
      outcome.total = -1;
      return outcome;
    }
    outcome.total = outcome.failed = 1;
    outcome.failures = {{"<test-compile>", "test sources failed to compile", listing}};
    return outcome;
  }
  outcome.total = counts[0];
  outcome.failed = counts[1] + counts[2];
  outcome.skipped = counts[3];
  outcome.passed = outcome.total - outcome.failed - outcome.skipped;
  // Keep failed == |failures| even when a log truncates the detail blocks.
  while (static_cast<int>(outcome.failures.size()) < outcome.failed) {
    outcome.failures.push_back({"<unknown>", "failure detail missing from log", ""});
  }
  if (static_cast<int>(outcome.failures.size()) > outcome.failed) {
    outcome.failures.resize(static_cast<std::size_t>(outcome.failed));
  }
  return outcome;
}

nlohmann::json to_json(const Diagnostic& d) {
  return {{"file", d.file},
          {"line", d.line},
          {"column", d.column},
          {"severity", d.severity == Severity::kError ? "error" : "warning"},
          {"message", d.message}};
}

nlohmann::json to_json(const TestOutcome& t) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : t.failures) {
    failures.push_back({{"test_id", f.test_id}, {"message", f.message}, {"trace", f.trace_excerpt}});
  }
  return {{"total", t.total},
          {"passed", t.passed},
          {"failed", t.failed},
          {"skipped", t.skipped},
          {"failures", failures}};
}

}  // namespace refagent::toolchain
