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

// Scratch copies of fixture projects and journal comparison helpers.

#ifndef REFAGENT_TESTS_SUPPORT_WORKSPACE_H_
#define REFAGENT_TESTS_SUPPORT_WORKSPACE_H_

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"
#include "refagent/util/files.h"

namespace refagent::testing {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& rel) { return fs::path(REFAGENT_FIXTURES) / rel; }

/// Points the fixture build descriptors at the built checker.
inline void use_javacheck() { ::setenv("REFAGENT_JAVACHECK", REFAGENT_JAVACHECK, 1); }

/// A private copy of a fixture directory, deleted on destruction.
class TempWorkspace {
 public:
  explicit TempWorkspace(const std::string& fixture_name, const std::string& tag = "ws") {
    static std::atomic<int> counter{0};
    root_ = fs::temp_directory_path() /
            ("refagent_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(root_);
    fs::create_directories(root_);
    if (!fixture_name.empty()) {
      fs::copy(fixture(fixture_name), root_ / "project", fs::copy_options::recursive);
    } else {
      fs::create_directories(root_ / "project");
    }
    use_javacheck();
  }
  ~TempWorkspace() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }
  TempWorkspace(const TempWorkspace&) = delete;
  TempWorkspace& operator=(const TempWorkspace&) = delete;

  fs::path project() const { return root_ / "project"; }
  fs::path journal() const { return root_ / "journal"; }
  fs::path scratch(const std::string& name) const { return root_ / name; }

 private:
  fs::path root_;
};

/// Drops wall-clock fields so journals of two runs can be compared.
inline nlohmann::json strip_timestamps(nlohmann::json j) {
  if (j.is_object()) {
    for (const char* key : {"timestamp", "started", "finished"}) j.erase(key);
    for (auto& [k, v] : j.items()) v = strip_timestamps(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timestamps(v);
  }
  return j;
}

/// relative path -> content, with JSON files normalized by strip_timestamps.
inline std::map<std::string, std::string> journal_contents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = fs::relative(entry.path(), root).generic_string();
    std::string text = util::read_file(entry.path());
    if (entry.path().extension() == ".json") {
      text = strip_timestamps(nlohmann::json::parse(text)).dump(2);
    }
    out[rel] = text;
  }
  return out;
}

}  // namespace refagent::testing

#endif  // REFAGENT_TESTS_SUPPORT_WORKSPACE_H_
