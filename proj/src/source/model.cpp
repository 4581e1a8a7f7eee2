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

#include "refagent/source/model.h"

#include <array>
#include <utility>

#include "refagent/source/lexer.h"

namespace refagent::source {

namespace {

constexpr std::array<std::pair<const char*, Modifier>, 14> kModifierNames = {{
    {"public", Modifier::kPublic},
    {"protected", Modifier::kProtected},
    {"private", Modifier::kPrivate},
    {"static", Modifier::kStatic},
    {"abstract", Modifier::kAbstract},
    {"final", Modifier::kFinal},
    {"default", Modifier::kDefault},
    {"synchronized", Modifier::kSynchronized},
    {"native", Modifier::kNative},
    {"transient", Modifier::kTransient},
    {"volatile", Modifier::kVolatile},
    {"strictfp", Modifier::kStrictfp},
    {"sealed", Modifier::kSealed},
    {"non-sealed", Modifier::kNonSealed},
}};

}  // namespace

bool TypeRef::is_primitive() const { return dims == 0 && is_primitive_type(name); }

std::string TypeRef::display() const {
  std::string out = name;
  for (int i = 0; i < dims; ++i) out += "[]";
  return out;
}

std::vector<std::string> ModifierSet::names() const {
  std::vector<std::string> out;
  for (const auto& [name, m] : kModifierNames) {
    if (has(m)) out.emplace_back(name);
  }
  return out;
}

std::optional<Modifier> ModifierSet::from_keyword(const std::string& word) {
  for (const auto& [name, m] : kModifierNames) {
    if (word == name) return m;
  }
  return std::nullopt;
}

std::string MethodDecl::signature() const {
  std::string sig = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) sig += ",";
    sig += params[i].type.display();
  }
  return sig + ")";
}

const char* to_string(TypeKind kind) {
  switch (kind) {
    case TypeKind::kClass:
      return "class";
    case TypeKind::kInterface:
      return "interface";
    case TypeKind::kEnum:
      return "enum";
  }
  return "class";
}

const FieldDecl* TypeDecl::find_field(const std::string& field_name) const {
  for (const auto& f : fields) {
    if (f.name == field_name) return &f;
  }
  return nullptr;
}

std::vector<const MethodDecl*> TypeDecl::find_methods(const std::string& method_name) const {
  std::vector<const MethodDecl*> out;
  for (const auto& m : methods) {
    if (m.name == method_name) out.push_back(&m);
  }
  return out;
}

}  // namespace refagent::source
