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

#ifndef REFAGENT_SOURCE_DESIGN_MODEL_H_
#define REFAGENT_SOURCE_DESIGN_MODEL_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refagent/source/model.h"

namespace refagent::source {

/// The resolved design of one project. Immutable once built.
class DesignModel {
 public:
  /// Resolves every type reference (nested scope, then FQN, then imports,
  /// then same package, then on-demand imports) and materializes the
  /// inheritance hierarchy. Throws DuplicateType or CyclicHierarchy.
  static DesignModel build(std::vector<SourceUnit> units);

  const std::map<std::string, TypeDecl>& types() const { return types_; }
  const std::vector<SourceUnit>& units() const { return units_; }
  /// child -> project-internal parents (superclass, or extended interfaces).
  const std::map<std::string, std::vector<std::string>>& hierarchy() const { return hierarchy_; }

  bool contains(const std::string& fqn) const { return types_.count(fqn) > 0; }
  /// Throws UnknownType.
  const TypeDecl& type(const std::string& fqn) const;
  const SourceUnit& unit_of(const std::string& fqn) const;
  bool is_test(const std::string& fqn) const;

  /// Non-test types, sorted by FQN.
  std::vector<std::string> main_types() const;
  /// Non-test top-level types, sorted by FQN; the refactoring unit of work.
  std::vector<std::string> main_top_level_types() const;
  std::vector<std::string> test_types() const;
  /// Types declared (directly) below `fqn` in the hierarchy.
  std::vector<std::string> children(const std::string& fqn) const;

  /// Resolves a written type name as seen from inside `context`.
  std::optional<std::string> resolve(const std::string& name, const TypeDecl& context) const;

  /// Text of the type's declaration: the whole file for a top-level type,
  /// the declaration's lines for a nested one.
  std::string source_text(const std::string& fqn) const;

 private:
  std::map<std::string, TypeDecl> types_;
  std::map<std::string, std::size_t> unit_index_;
  std::map<std::string, std::vector<std::string>> hierarchy_;
  std::vector<SourceUnit> units_;
};

/// Transitive supertype chain (nearest first, breadth-first for interfaces).
/// External ancestors are appended once as a terminal marker only when
/// `include_external` is set. Throws UnknownType.
std::vector<std::string> ancestors(const DesignModel& model, const std::string& fqn,
                                   bool include_external = false);

struct ProjectLayout {
  std::vector<std::string> source_roots{"src/main/java"};
  std::vector<std::string> test_roots{"src/test/java"};
};

struct JavaFile {
  std::filesystem::path abs;
  std::string rel;  // relative to the project root, '/'-separated
  bool is_test = false;
};

/// Every .java file under the layout's roots (outside .refagent/, target/
/// and .git/), sorted by relative path. Falls back to scanning `root` itself
/// when no configured source root exists.
std::vector<JavaFile> list_java_files(const std::filesystem::path& root,
                                      const ProjectLayout& layout = {});

/// Every .java file under the layout's roots, parsed, sorted by relative
/// path. Falls back to scanning `root` itself when no configured source root
/// exists. ParseError messages are prefixed with the offending path.
std::vector<SourceUnit> load_project(const std::filesystem::path& root,
                                     const ProjectLayout& layout = {});

DesignModel load_design_model(const std::filesystem::path& root,
                              const ProjectLayout& layout = {});

}  // namespace refagent::source

#endif  // REFAGENT_SOURCE_DESIGN_MODEL_H_
