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

#ifndef REFAGENT_SOURCE_PARSER_H_
#define REFAGENT_SOURCE_PARSER_H_

#include <string>
#include <string_view>

#include "refagent/source/model.h"

namespace refagent::source {

/// Parses one compilation unit of the supported Java subset.
///
/// Declarations (package, imports, classes, interfaces, enums, fields,
/// methods, constructors, nested types) are parsed structurally. Method
/// bodies are checked at statement level, so a missing `;` or an unbalanced
/// brace is reported with the line javac would blame, and are then scanned
/// for metric facts: decision points, field accesses, call sites, numeric
/// literals and local declarations. Anonymous and local classes fold into
/// the enclosing method. Records and module declarations are rejected.
///
/// Throws ParseError; never crashes on arbitrary input.
SourceUnit parse_source(std::string_view text, const std::string& path);

}  // namespace refagent::source

#endif  // REFAGENT_SOURCE_PARSER_H_
