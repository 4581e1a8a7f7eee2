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

#ifndef REFAGENT_SOURCE_LEXER_H_
#define REFAGENT_SOURCE_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

namespace refagent::source {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kIntLiteral,
  kFloatLiteral,
  kStringLiteral,
  kCharLiteral,
  kOperator,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 0;
  int column = 0;

  bool is(std::string_view s) const {
    return (kind == TokenKind::kOperator || kind == TokenKind::kKeyword) && text == s;
  }
  bool is_identifier() const { return kind == TokenKind::kIdentifier; }
  bool is_literal() const {
    return kind == TokenKind::kIntLiteral || kind == TokenKind::kFloatLiteral ||
           kind == TokenKind::kStringLiteral || kind == TokenKind::kCharLiteral;
  }
  bool is_number() const {
    return kind == TokenKind::kIntLiteral || kind == TokenKind::kFloatLiteral;
  }
};

/// Splits Java source into tokens; comments and whitespace are dropped.
/// `>` is always emitted alone so nested generic closers need no splitting.
/// The returned vector always ends with a kEnd token. Throws ParseError on
/// unterminated literals or comments.
std::vector<Token> tokenize(std::string_view text);

bool is_java_keyword(std::string_view word);
bool is_primitive_type(std::string_view word);

/// Numeric value of an int/float literal token (underscores, radix prefixes
/// and type suffixes handled). Returns NaN when the text is not numeric.
double numeric_value(std::string_view literal);

}  // namespace refagent::source

#endif  // REFAGENT_SOURCE_LEXER_H_
