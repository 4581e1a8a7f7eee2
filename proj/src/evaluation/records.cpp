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

#include "refagent/evaluation/records.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "refagent/error.h"
#include "refagent/util/files.h"

namespace refagent::evaluation {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string>& miner_vocabulary() {
  static const std::vector<std::string> kTypes = {
      "Extract Method", "Inline Method", "Rename Method", "Move Method", "Move And Rename Method",
      "Pull Up Method", "Push Down Method", "Extract And Move Method", "Move And Inline Method",
      "Merge Method", "Change Method Signature", "Extract Class", "Extract Subclass",
      "Extract Superclass", "Extract Interface", "Rename Class", "Move Class",
      "Move And Rename Class", "Merge Class", "Split Class", "Convert Anonymous Class to Type",
      "Introduce Polymorphism", "Rename Package", "Move Package", "Split Package",
      "Merge Package", "Move Source Folder", "Extract Variable", "Inline Variable",
      "Rename Variable", "Merge Variable", "Split Variable", "Change Variable Type",
      "Parameterize Variable", "Replace Variable With Attribute", "Extract Attribute",
      "Inline Attribute", "Rename Attribute", "Move Attribute", "Move And Rename Attribute",
      "Replace Attribute", "Pull Up Attribute", "Push Down Attribute", "Merge Attribute",
      "Split Attribute", "Change Attribute Type", "Encapsulate Attribute",
      "Parameterize Attribute", "Replace Attribute With Variable", "Rename Parameter",
      "Add Parameter", "Remove Parameter", "Reorder Parameter", "Merge Parameter",
      "Split Parameter", "Change Parameter Type", "Localize Parameter", "Change Return Type",
      "Add Thrown Exception Type", "Remove Thrown Exception Type",
      "Change Thrown Exception Type", "Change Method Access Modifier",
      "Change Attribute Access Modifier", "Change Class Access Modifier",
      "Add Method Modifier", "Remove Method Modifier", "Add Attribute Modifier",
      "Remove Attribute Modifier", "Add Variable Modifier", "Remove Variable Modifier",
      "Add Parameter Modifier", "Remove Parameter Modifier", "Add Class Modifier",
      "Remove Class Modifier", "Add Method Annotation", "Remove Method Annotation",
      "Modify Method Annotation", "Add Attribute Annotation", "Remove Attribute Annotation",
      "Modify Attribute Annotation", "Add Class Annotation", "Remove Class Annotation",
      "Modify Class Annotation", "Add Parameter Annotation", "Remove Parameter Annotation",
      "Modify Parameter Annotation", "Move Code", "Replace Loop With Pipeline",
      "Replace Pipeline With Loop", "Replace Anonymous With Lambda",
      "Replace Anonymous With Class", "Split Conditional", "Invert Condition",
      "Merge Conditional", "Merge Catch", "Replace Conditional With Ternary",
      "Replace Generic With Diamond", "Try With Resources", "Extract Fixture",
      "Parameterize Test", "Assert Throws"};
  return kTypes;
}

// Common names for the same refactorings in other catalogs.
const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> kAliases = {
      {"rename field", "Rename Attribute"},
      {"move field", "Move Attribute"},
      {"pull up field", "Pull Up Attribute"},
      {"push down field", "Push Down Attribute"},
      {"encapsulate field", "Encapsulate Attribute"},
      {"extract local variable", "Extract Variable"},
      {"introduce explaining variable", "Extract Variable"},
      {"inline temp", "Inline Variable"},
      {"rename local variable", "Rename Variable"}};
  return kAliases;
}

std::string collapse(const std::string& s, bool lower) {
  std::string out;
  bool space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += lower ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
  }
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::string class_from_path(const std::string& path) {
  std::string p = path;
  for (const char* root : {"src/main/java/", "src/test/java/", "src/"}) {
    auto pos = p.find(root);
    if (pos != std::string::npos) {
      p = p.substr(pos + std::string(root).size());
      break;
    }
  }
  if (p.ends_with(".java")) p.resize(p.size() - 5);
  std::replace(p.begin(), p.end(), '/', '.');
  return p;
}

// The class named after `marker` (e.g. "in class "), last occurrence.
std::optional<std::string> class_after(const std::string& text, const std::string& marker) {
  auto pos = text.rfind(marker);
  if (pos == std::string::npos) return std::nullopt;
  std::size_t b = pos + marker.size(), e = b;
  while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '.' ||
                             text[e] == '_' || text[e] == '$')) {
    ++e;
  }
  std::string name = text.substr(b, e - b);
  while (!name.empty() && name.back() == '.') name.pop_back();
  if (name.empty()) return std::nullopt;
  return name;
}

struct Location {
  std::string file;
  int start = 0;
  int end = 0;
  std::string element_type;
  std::string element;
};

std::vector<Location> locations(const nlohmann::json& entry, const char* key,
                                const std::string& path, const std::string& where) {
  std::vector<Location> out;
  if (!entry.contains(key)) return out;
  const auto& arr = entry.at(key);
  if (!arr.is_array()) throw SchemaError(path, where + "." + key + " is not an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& l = arr[i];
    const std::string at = where + "." + key + "[" + std::to_string(i) + "]";
    if (!l.is_object()) throw SchemaError(path, at + " is not an object");
    Location loc;
    try {
      loc.file = l.value("filePath", "");
      if (!l.contains("startLine") || !l.contains("endLine")) {
        throw SchemaError(path, at + " lacks startLine/endLine");
      }
      loc.start = l.at("startLine").get<int>();
      loc.end = l.at("endLine").get<int>();
      loc.element_type = l.value("codeElementType", "");
      if (l.contains("codeElement") && l.at("codeElement").is_string()) {
        loc.element = l.at("codeElement").get<std::string>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path, at + ": " + e.what());
    }
    if (loc.start < 1 || loc.end < loc.start) {
      throw SchemaError(path, at + " has an invalid line range");
    }
    out.push_back(std::move(loc));
  }
  return out;
}

}  // namespace

const char* to_string(RecordSource s) {
  switch (s) {
    case RecordSource::kEngine: return "engine";
    case RecordSource::kMiner: return "miner";
    case RecordSource::kBaseline: return "baseline";
  }
  return "engine";
}

nlohmann::json to_json(const RefactoringRecord& r) {
  return {{"source", to_string(r.source)},
          {"type", r.refactoring_type},
          {"class", r.class_fqn},
          {"method", r.method_signature ? nlohmann::json(*r.method_signature) : nlohmann::json()},
          {"line_range", r.line_range ? nlohmann::json::array({r.line_range->start, r.line_range->end})
                                      : nlohmann::json()},
          {"commit", r.commit_id ? nlohmann::json(*r.commit_id) : nlohmann::json()}};
}

std::string normalize_refactoring_type(const std::string& name) {
  const std::string key = collapse(name, true);
  for (const auto& t : miner_vocabulary()) {
    if (collapse(t, true) == key) return t;
  }
  if (auto it = aliases().find(key); it != aliases().end()) return it->second;
  return trim(name);
}

std::optional<std::string> method_from_code_element(const std::string& code_element) {
  auto open = code_element.find('(');
  auto close = code_element.find(')', open == std::string::npos ? 0 : open);
  if (open == std::string::npos || close == std::string::npos) return std::nullopt;
  // The name is the last word before the parenthesis.
  std::size_t e = open;
  while (e > 0 && code_element[e - 1] == ' ') --e;
  std::size_t b = e;
  while (b > 0 && code_element[b - 1] != ' ') --b;
  std::string name = code_element.substr(b, e - b);
  if (name.empty()) return std::nullopt;
  // Parameters are written "name Type", comma separated.
  std::string params = code_element.substr(open + 1, close - open - 1);
  std::vector<std::string> types;
  int depth = 0;
  std::string current;
  auto flush = [&] {
    std::string p = trim(current);
    current.clear();
    if (p.empty()) return;
    auto space = p.find(' ');
    std::string type = space == std::string::npos ? p : trim(p.substr(space + 1));
    type.erase(std::remove(type.begin(), type.end(), ' '), type.end());
    types.push_back(type);
  };
  for (char c : params) {
    if (c == '<') ++depth;
    if (c == '>') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    current += c;
  }
  flush();
  std::string sig = name + "(";
  for (std::size_t i = 0; i < types.size(); ++i) sig += (i ? "," : "") + types[i];
  return sig + ")";
}

std::vector<RefactoringRecord> parse_miner_records(const nlohmann::json& j, const std::string& path,
                                                   RecordSource source,
                                                   std::vector<std::string>* warnings) {
  if (!j.is_object()) throw SchemaError(path, "top level is not an object");
  std::vector<std::pair<std::optional<std::string>, const nlohmann::json*>> groups;
  if (j.contains("commits")) {
    if (!j.at("commits").is_array()) throw SchemaError(path, "commits is not an array");
    for (const auto& c : j.at("commits")) {
      if (!c.is_object()) throw SchemaError(path, "commit entry is not an object");
      std::optional<std::string> sha;
      if (c.contains("sha1") && c.at("sha1").is_string()) sha = c.at("sha1").get<std::string>();
      if (!c.contains("refactorings")) throw SchemaError(path, "commit without refactorings");
      groups.emplace_back(sha, &c.at("refactorings"));
    }
  } else if (j.contains("refactorings")) {
    groups.emplace_back(std::nullopt, &j.at("refactorings"));
  } else {
    throw SchemaError(path, "expected a 'commits' or 'refactorings' array");
  }

  std::vector<RefactoringRecord> out;
  int index = 0;
  for (const auto& [sha, refs] : groups) {
    if (!refs->is_array()) throw SchemaError(path, "refactorings is not an array");
    for (const auto& r : *refs) {
      const std::string where = "refactorings[" + std::to_string(index++) + "]";
      if (!r.is_object() || !r.contains("type") || !r.at("type").is_string()) {
        throw SchemaError(path, where + " has no type");
      }
      const std::string description =
          r.contains("description") && r.at("description").is_string()
              ? r.at("description").get<std::string>()
              : "";
      auto left = locations(r, "leftSideLocations", path, where);
      auto right = locations(r, "rightSideLocations", path, where);

      RefactoringRecord rec;
      rec.source = source;
      rec.refactoring_type = normalize_refactoring_type(r.at("type").get<std::string>());
      rec.commit_id = sha;

      std::optional<std::string> cls = class_after(description, "in class ");
      // A type declaration names the class as it exists after the change.
      for (const auto* side : {&right, &left}) {
        for (const auto& l : *side) {
          if (!cls && l.element_type == "TYPE_DECLARATION" && !l.element.empty()) cls = l.element;
        }
      }
      if (!cls) cls = class_after(description, "from class ");
      if (!cls) {
        const auto& any = !right.empty() ? right : left;
        if (any.empty() || any.front().file.empty()) {
          throw SchemaError(path, where + ": cannot determine the class");
        }
        cls = class_from_path(any.front().file);
      }
      rec.class_fqn = *cls;

      for (const auto* side : {&left, &right}) {
        for (const auto& l : *side) {
          if (!rec.method_signature && l.element_type == "METHOD_DECLARATION") {
            rec.method_signature = method_from_code_element(l.element);
          }
        }
      }
      if (!right.empty()) {
        rec.line_range = source::LineRange{right.front().start, right.front().end};
      } else if (warnings) {
        warnings->push_back(where + " (" + rec.refactoring_type + " in " + rec.class_fqn +
                            ") has no rightSideLocations; loaded without a line range");
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<RefactoringRecord> load_miner_records(const fs::path& path, RecordSource source,
                                                  std::vector<std::string>* warnings) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(util::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string(), e.what());
  } catch (const Error& e) {
    throw SchemaError(path.string(), e.what());
  }
  return parse_miner_records(j, path.string(), source, warnings);
}

std::vector<RefactoringRecord> load_engine_records(const fs::path& journal_root) {
  std::vector<fs::path> dirs;
  if (!fs::is_directory(journal_root)) throw IncompleteJournal(journal_root.string());
  for (const auto& e : fs::directory_iterator(journal_root)) {
    if (e.is_directory() && fs::exists(e.path() / "verdict.json")) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<RefactoringRecord> out;
  for (const auto& dir : dirs) {
    auto verdict = nlohmann::json::parse(util::read_file(dir / "verdict.json"));
    if (verdict.value("verdict", "") != "COMMITTED") continue;
    if (!fs::exists(dir / "plan.json")) throw IncompleteJournal((dir / "plan.json").string());
    auto plan = nlohmann::json::parse(util::read_file(dir / "plan.json"));
    const std::string fqn = verdict.at("class").get<std::string>();
    if (!plan.contains("plan") || !plan.at("plan").is_object()) continue;
    for (const auto& e : plan.at("plan").at("entries")) {
      RefactoringRecord rec;
      rec.source = RecordSource::kEngine;
      rec.refactoring_type = normalize_refactoring_type(e.at("refactoring_type").get<std::string>());
      rec.class_fqn = fqn;
      if (e.at("region_kind") == "method") rec.method_signature = e.at("identifier").get<std::string>();
      if (e.contains("line_range") && e.at("line_range").is_array()) {
        rec.line_range = source::LineRange{e.at("line_range")[0].get<int>(),
                                           e.at("line_range")[1].get<int>()};
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace refagent::evaluation
