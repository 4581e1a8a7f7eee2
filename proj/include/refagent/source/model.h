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

#ifndef REFAGENT_SOURCE_MODEL_H_
#define REFAGENT_SOURCE_MODEL_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace refagent::source {

struct LineRange {
  int start = 0;
  int end = 0;

  bool intersects(const LineRange& o) const { return start <= o.end && o.start <= end; }
  int length() const { return end - start + 1; }
  friend bool operator==(const LineRange&, const LineRange&) = default;
  friend auto operator<=>(const LineRange&, const LineRange&) = default;
};

/// A type as written in source, generics erased. `resolved` holds the project
/// FQN once the design model is built; `external` marks references that did
/// not resolve to a project type (primitives and type variables are neither).
struct TypeRef {
  std::string name;
  int dims = 0;
  std::string resolved;
  bool external = false;

  bool is_primitive() const;
  bool is_project() const { return !resolved.empty(); }
  /// Erased display form, e.g. "List" or "int[]".
  std::string display() const;
  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

enum class Modifier : std::uint32_t {
  kPublic = 1u << 0,
  kProtected = 1u << 1,
  kPrivate = 1u << 2,
  kStatic = 1u << 3,
  kAbstract = 1u << 4,
  kFinal = 1u << 5,
  kDefault = 1u << 6,
  kSynchronized = 1u << 7,
  kNative = 1u << 8,
  kTransient = 1u << 9,
  kVolatile = 1u << 10,
  kStrictfp = 1u << 11,
  kSealed = 1u << 12,
  kNonSealed = 1u << 13,
};

class ModifierSet {
 public:
  ModifierSet() = default;
  explicit ModifierSet(std::uint32_t bits) : bits_(bits) {}

  bool has(Modifier m) const { return (bits_ & static_cast<std::uint32_t>(m)) != 0; }
  void add(Modifier m) { bits_ |= static_cast<std::uint32_t>(m); }
  std::uint32_t bits() const { return bits_; }
  std::vector<std::string> names() const;
  static std::optional<Modifier> from_keyword(const std::string& word);
  friend bool operator==(const ModifierSet&, const ModifierSet&) = default;

 private:
  std::uint32_t bits_ = 0;
};

struct NumericLiteral {
  std::string text;  // as written, including a leading '-' when negated
  double value = 0;
  int line = 0;
  friend bool operator==(const NumericLiteral&, const NumericLiteral&) = default;
};

/// A call site inside a body. `receiver` is "" for unqualified calls, the
/// identifier text for `x.m(...)`, "this"/"super" for those forms, "new" for
/// constructor invocations (then `name` is the erased type) and "?" when the
/// receiver is a compound expression.
struct CallSite {
  std::string receiver;
  std::string name;
  int arity = 0;
  int line = 0;
  friend bool operator==(const CallSite&, const CallSite&) = default;
};

struct LocalVar {
  std::string name;
  TypeRef type;
  friend bool operator==(const LocalVar&, const LocalVar&) = default;
};

struct BodyStats {
  int loc = 0;
  int decision_points = 0;
  std::set<std::string> accessed_fields;
  std::vector<TypeRef> invoked_types;
  std::vector<CallSite> calls;
  std::vector<NumericLiteral> numeric_literals;
  std::vector<LocalVar> locals;
  /// Bare or `this.`-qualified names seen in the body; resolved against the
  /// declaring type's fields once the whole type is parsed.
  std::set<std::string> referenced_names;
  friend bool operator==(const BodyStats&, const BodyStats&) = default;
};

struct Param {
  std::string name;
  TypeRef type;
  bool varargs = false;
  friend bool operator==(const Param&, const Param&) = default;
};

struct MethodDecl {
  std::string name;
  std::vector<Param> params;
  TypeRef return_type;  // empty name for constructors
  ModifierSet modifiers;
  bool is_constructor = false;
  bool has_body = false;
  std::vector<std::string> annotations;
  std::vector<std::string> type_params;
  BodyStats body;
  LineRange line_range;

  /// name(T1,T2) with erased parameter type names.
  std::string signature() const;
  bool is_public() const { return modifiers.has(Modifier::kPublic); }
  bool is_private() const { return modifiers.has(Modifier::kPrivate); }
  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct FieldDecl {
  std::string name;
  TypeRef type;
  ModifierSet modifiers;
  bool is_constant = false;
  int line = 0;
  std::vector<NumericLiteral> initializer_literals;
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

enum class TypeKind { kClass, kInterface, kEnum };

const char* to_string(TypeKind kind);

struct TypeDecl {
  std::string fqn;
  std::string simple_name;
  std::string package;
  std::string outer_fqn;  // empty for top-level types
  TypeKind kind = TypeKind::kClass;
  std::optional<TypeRef> supertype;
  std::vector<TypeRef> interfaces;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  ModifierSet modifiers;
  std::vector<std::string> type_params;
  LineRange line_range;
  std::string unit_path;
  bool is_test = false;

  bool is_top_level() const { return outer_fqn.empty(); }
  const FieldDecl* find_field(const std::string& name) const;
  std::vector<const MethodDecl*> find_methods(const std::string& name) const;
  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct Import {
  std::string name;  // qualified name without a trailing ".*"
  bool is_static = false;
  bool on_demand = false;
  friend bool operator==(const Import&, const Import&) = default;
};

struct SourceUnit {
  std::string path;
  std::string package;
  std::vector<Import> imports;
  std::vector<TypeDecl> types;  // top-level and nested, in declaration order
  std::string raw_text;
  int line_count = 0;
  bool is_test = false;
  friend bool operator==(const SourceUnit&, const SourceUnit&) = default;
};

}  // namespace refagent::source

#endif  // REFAGENT_SOURCE_MODEL_H_
