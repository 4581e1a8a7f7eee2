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

#ifndef REFAGENT_SOURCE_SERIALIZE_H_
#define REFAGENT_SOURCE_SERIALIZE_H_

#include "json.hpp"
#include "refagent/source/model.h"

namespace refagent::source {

void to_json(nlohmann::json& j, const LineRange& r);
void from_json(const nlohmann::json& j, LineRange& r);
void to_json(nlohmann::json& j, const TypeRef& r);
void from_json(const nlohmann::json& j, TypeRef& r);
void to_json(nlohmann::json& j, const MethodDecl& m);
void from_json(const nlohmann::json& j, MethodDecl& m);
void to_json(nlohmann::json& j, const FieldDecl& f);
void from_json(const nlohmann::json& j, FieldDecl& f);
void to_json(nlohmann::json& j, const TypeDecl& t);
void from_json(const nlohmann::json& j, TypeDecl& t);
void to_json(nlohmann::json& j, const SourceUnit& u);
void from_json(const nlohmann::json& j, SourceUnit& u);

}  // namespace refagent::source

#endif  // REFAGENT_SOURCE_SERIALIZE_H_
