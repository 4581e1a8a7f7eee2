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

#ifndef REFAGENT_EVALUATION_RECORDS_H_
#define REFAGENT_EVALUATION_RECORDS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/source/model.h"

namespace refagent::evaluation {

enum class RecordSource { kEngine, kMiner, kBaseline };

const char* to_string(RecordSource s);

struct RefactoringRecord {
  RecordSource source = RecordSource::kEngine;
  std::string refactoring_type;
  std::string class_fqn;
  std::optional<std::string> method_signature;  // "name" or "name(T1,T2)"
  std::optional<source::LineRange> line_range;
  std::optional<std::string> commit_id;
  friend bool operator==(const RefactoringRecord&, const RefactoringRecord&) = default;
};

nlohmann::json to_json(const RefactoringRecord& r);

/// Case-insensitive, whitespace-collapsed lookup in the RefactoringMiner
/// type vocabulary; names outside it come back trimmed but otherwise as
/// written.
std::string normalize_refactoring_type(const std::string& name);

/// "public deposit(amount long) : void" -> "deposit(long)". Returns nullopt
/// when the text is not a method declaration.
std::optional<std::string> method_from_code_element(const std::string& code_element);

/// Parses RefactoringMiner JSON output:
///   {"commits": [{"sha1", "refactorings": [{"type", "description",
///     "leftSideLocations": [...], "rightSideLocations": [...]}]}]}
/// Locations carry filePath, startLine, endLine, codeElementType and
/// codeElement. A bare {"refactorings": [...]} object is accepted too.
/// Entries without rightSideLocations load without a line range and add a
/// line to `warnings`. Throws SchemaError.
std::vector<RefactoringRecord> parse_miner_records(const nlohmann::json& j,
                                                   const std::string& path,
                                                   RecordSource source = RecordSource::kMiner,
                                                   std::vector<std::string>* warnings = nullptr);

std::vector<RefactoringRecord> load_miner_records(const std::filesystem::path& path,
                                                  RecordSource source = RecordSource::kMiner,
                                                  std::vector<std::string>* warnings = nullptr);

/// Plan entries of every COMMITTED session in an engine journal.
std::vector<RefactoringRecord> load_engine_records(const std::filesystem::path& journal_root);

}  // namespace refagent::evaluation

#endif  // REFAGENT_EVALUATION_RECORDS_H_
