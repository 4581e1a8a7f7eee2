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

#ifndef REFAGENT_CLI_CONFIG_FILE_H_
#define REFAGENT_CLI_CONFIG_FILE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refagent/orchestrator/config.h"

namespace refagent::cli {

inline constexpr const char* kConfigFileName = "refagent.toml";

/// A parsed refagent.toml: "section.key" -> values (one for scalars, any
/// number for arrays). Top-level keys have no section prefix.
struct ConfigFile {
  std::filesystem::path path;
  std::map<std::string, std::vector<std::string>> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  /// The single value of `key`. Throws ConfigError for arrays.
  std::string scalar(const std::string& key) const;
  /// Relative paths resolve against the file's directory; empty stays empty.
  std::filesystem::path resolve(const std::string& value) const;
};

/// Reads a TOML subset: [section] headers, key = value, quoted strings,
/// numbers, booleans and single-line arrays. Unknown keys raise
/// ConfigError so typos do not pass silently.
ConfigFile load_config_file(const std::filesystem::path& path);

/// Settings the file may carry besides engine fields.
struct FileExtras {
  std::optional<std::filesystem::path> journal;
};
/// Overwrites the fields of `config` named in `file`.
FileExtras apply_config_file(const ConfigFile& file, orchestrator::EngineConfig& config);

/// Every key the file may contain, "section.key" form.
const std::vector<std::string>& known_config_keys();

}  // namespace refagent::cli

#endif  // REFAGENT_CLI_CONFIG_FILE_H_
