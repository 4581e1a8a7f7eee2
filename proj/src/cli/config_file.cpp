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

#include "refagent/cli/config_file.h"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <set>

#include "refagent/error.h"

namespace refagent::cli {

namespace fs = std::filesystem;

namespace {

using Setter = std::function<void(const ConfigFile&, const std::string&, orchestrator::EngineConfig&,
                                  FileExtras&)>;

long to_long(const ConfigFile& f, const std::string& key) {
  const std::string v = f.scalar(key);
  try {
    std::size_t used = 0;
    long n = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(f.path.string() + ": " + key + " must be an integer, got '" + v + "'");
  }
}

int to_int(const ConfigFile& f, const std::string& key) { return static_cast<int>(to_long(f, key)); }

double to_double(const std::string& v, const ConfigFile& f, const std::string& key) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(f.path.string() + ": " + key + " must be a number, got '" + v + "'");
  }
}

bool to_bool(const ConfigFile& f, const std::string& key) {
  const std::string v = f.scalar(key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(f.path.string() + ": " + key + " must be true or false, got '" + v + "'");
}

std::vector<std::string> to_list(const ConfigFile& f, const std::string& key) {
  std::vector<std::string> out;
  for (const auto& v : f.values.at(key)) {
    if (!v.empty()) out.push_back(v);
  }
  return out;
}

const std::map<std::string, Setter>& setters() {
  using orchestrator::EngineConfig;
  static const std::map<std::string, Setter> kSetters = {
      {"seed", [](auto& f, auto& k, EngineConfig& c, auto&) {
         long v = to_long(f, k);
         if (v < 0) throw ConfigError(f.path.string() + ": seed must not be negative");
         c.seed = static_cast<std::uint64_t>(v);
       }},
      {"token_budget", [](auto& f, auto& k, EngineConfig& c, auto&) { c.token_budget = to_long(f, k); }},
      {"max_compile_iters", [](auto& f, auto& k, EngineConfig& c, auto&) { c.max_compile_iters = to_int(f, k); }},
      {"max_test_iters", [](auto& f, auto& k, EngineConfig& c, auto&) { c.max_test_iters = to_int(f, k); }},
      {"max_plan_attempts", [](auto& f, auto& k, EngineConfig& c, auto&) { c.max_plan_attempts = to_int(f, k); }},
      {"max_tool_rounds", [](auto& f, auto& k, EngineConfig& c, auto&) { c.max_tool_rounds = to_int(f, k); }},
      {"summary_token_budget",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.summary_token_budget = to_long(f, k); }},
      {"llm_summary", [](auto& f, auto& k, EngineConfig& c, auto&) { c.llm_summary = to_bool(f, k); }},
      {"coefficient_table", [](auto& f, auto& k, EngineConfig& c, auto&) {
         std::string v = f.scalar(k);
         c.coefficient_table = (v == "standard" || v == "printed") ? v : f.resolve(v).string();
       }},
      {"test_generator", [](auto& f, auto& k, EngineConfig& c, auto&) { c.test_generator = f.scalar(k); }},
      {"stub_dir", [](auto& f, auto& k, EngineConfig& c, auto&) { c.stub_dir = f.resolve(f.scalar(k)); }},
      {"generator_command",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.generator_command = to_list(f, k); }},
      {"vcs_hook", [](auto& f, auto& k, EngineConfig& c, auto&) { c.vcs_hook = to_list(f, k); }},
      {"source_roots", [](auto& f, auto& k, EngineConfig& c, auto&) { c.layout.source_roots = to_list(f, k); }},
      {"test_roots", [](auto& f, auto& k, EngineConfig& c, auto&) { c.layout.test_roots = to_list(f, k); }},
      {"classes", [](auto& f, auto& k, EngineConfig& c, auto&) { c.only_classes = to_list(f, k); }},
      {"journal", [](auto& f, auto& k, EngineConfig&, FileExtras& x) { x.journal = f.resolve(f.scalar(k)); }},

      {"backend.kind",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.kind = llm::backend_kind_from_string(f.scalar(k)); }},
      {"backend.endpoint", [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.endpoint = f.scalar(k); }},
      {"backend.model", [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.model = f.scalar(k); }},
      {"backend.temperature", [](auto& f, auto& k, EngineConfig& c, auto&) {
         c.backend.temperature = to_double(f.scalar(k), f, k);
       }},
      {"backend.max_output_tokens",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.max_output_tokens = to_int(f, k); }},
      {"backend.context_window",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.context_window = to_long(f, k); }},
      {"backend.timeout_seconds",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.timeout_seconds = to_int(f, k); }},
      {"backend.playbook",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.playbook_path = f.resolve(f.scalar(k)); }},
      {"backend.record",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.backend.record_path = f.resolve(f.scalar(k)); }},

      {"ablation.context", [](auto& f, auto& k, EngineConfig& c, auto&) { c.ablation.context = to_bool(f, k); }},
      {"ablation.depgraph", [](auto& f, auto& k, EngineConfig& c, auto&) { c.ablation.depgraph = to_bool(f, k); }},
      {"ablation.codesearch",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.ablation.codesearch = to_bool(f, k); }},

      {"thresholds.long_method_loc",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.thresholds.long_method_loc = to_int(f, k); }},
      {"thresholds.complex_method_cc",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.thresholds.complex_method_cc = to_int(f, k); }},
      {"thresholds.long_params",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.thresholds.long_params = to_int(f, k); }},
      {"thresholds.large_class_nom",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.thresholds.large_class_nom = to_int(f, k); }},
      {"thresholds.large_class_loc",
       [](auto& f, auto& k, EngineConfig& c, auto&) { c.thresholds.large_class_loc = to_int(f, k); }},
      {"thresholds.magic_allowlist", [](auto& f, auto& k, EngineConfig& c, auto&) {
         c.thresholds.magic_allowlist.clear();
         for (const auto& v : to_list(f, k)) c.thresholds.magic_allowlist.insert(to_double(v, f, k));
       }},
      {"thresholds.entry_points", [](auto& f, auto& k, EngineConfig& c, auto&) {
         auto list = to_list(f, k);
         c.thresholds.entry_points = std::set<std::string>(list.begin(), list.end());
       }},
  };
  return kSetters;
}

}  // namespace

std::string ConfigFile::scalar(const std::string& key) const {
  const auto& v = values.at(key);
  if (v.size() != 1) throw ConfigError(path.string() + ": " + key + " must be a single value");
  return v.front();
}

fs::path ConfigFile::resolve(const std::string& value) const {
  fs::path p(value);
  if (p.empty()) return p;
  if (p.is_relative()) p = path.parent_path() / p;
  return p.lexically_normal();
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> kKeys = [] {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
  }();
  return kKeys;
}

ConfigFile load_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  ConfigFile file;
  file.path = path;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  for (const auto& item : items) {
    // Section open/close markers.
    if (item.name == "++" || item.name == "--") continue;
    std::vector<std::string> parents;
    for (const auto& p : item.parents) {
      if (p != "default") parents.push_back(p);
    }
    std::string key;
    for (const auto& p : parents) key += p + ".";
    key += item.name;
    if (!setters().count(key)) throw ConfigError(path.string() + ": unknown key '" + key + "'");
    file.values[key] = item.inputs;
  }
  return file;
}

FileExtras apply_config_file(const ConfigFile& file, orchestrator::EngineConfig& config) {
  FileExtras extras;
  for (const auto& [key, _] : file.values) setters().at(key)(file, key, config, extras);
  return extras;
}

}  // namespace refagent::cli
