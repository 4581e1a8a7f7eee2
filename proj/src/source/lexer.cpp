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

#include "refagent/source/lexer.h"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "refagent/error.h"

namespace refagent::source {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",
    "catch",    "char",       "class",     "const",     "continue",  "default",
    "do",       "double",     "else",      "enum",      "extends",   "final",
    "finally",  "float",      "for",       "goto",      "if",        "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",
    "new",      "package",    "private",   "protected", "public",    "return",
    "short",    "static",     "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",
    "volatile", "while",      "true",      "false",     "null",
};

// Longest first; `>` is intentionally single-char only.
constexpr std::array<std::string_view, 35> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    "+=",  "-=",  "*=", "/=", "&=", "|=", "^=", "%=", "<<", "(",  ")",
    "{",   "}",   "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",  "!",
    "~",   "?",
};
constexpr std::string_view kSingleOps = ":+-*/&|^%>";

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::kEnd;
    end.line = line_;
    end.column = column_;
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    unsigned char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      // UTF-8 continuation bytes do not start a new column.
      ++column_;
    }
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        int start = line_;
        advance();
        advance();
        while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= text_.size()) throw ParseError(start, "unterminated comment");
        advance();
        advance();
      } else if (static_cast<unsigned char>(c) == 0xEF && peek(1) == '\xBB' &&
                 peek(2) == '\xBF') {
        pos_ += 3;  // BOM
      } else {
        return;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, int line, int column) const {
    Token t;
    t.kind = kind;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.line = line;
    t.column = column;
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    const int line = line_;
    const int column = column_;
    const unsigned char c = peek();

    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_part(peek())) advance();
      Token t = make(TokenKind::kIdentifier, start, line, column);
      if (is_java_keyword(t.text)) t.kind = TokenKind::kKeyword;
      return t;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(start, line, column);
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') return text_block(start, line, column);
      advance();
      while (true) {
        if (pos_ >= text_.size() || peek() == '\n') {
          throw ParseError(line, "unterminated string literal").at_column(column);
        }
        if (peek() == '\\') {
          advance();
          if (pos_ < text_.size()) advance();
          continue;
        }
        if (peek() == '"') break;
        advance();
      }
      advance();
      return make(TokenKind::kStringLiteral, start, line, column);
    }
    if (c == '\'') {
      advance();
      while (true) {
        if (pos_ >= text_.size() || peek() == '\n') {
          throw ParseError(line, "unterminated character literal").at_column(column);
        }
        if (peek() == '\\') {
          advance();
          if (pos_ < text_.size()) advance();
          continue;
        }
        if (peek() == '\'') break;
        advance();
      }
      advance();
      return make(TokenKind::kCharLiteral, start, line, column);
    }
    for (std::string_view op : kOperators) {
      if (text_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokenKind::kOperator, start, line, column);
      }
    }
    if (kSingleOps.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::kOperator, start, line, column);
    }
    throw ParseError(line, std::string("illegal character '") + static_cast<char>(c) + "'")
        .at_column(column);
  }

  Token number(std::size_t start, int line, int column) {
    bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    bool is_float = false;
    if (hex) {
      advance();
      advance();
    }
    while (pos_ < text_.size()) {
      char ch = peek();
      if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
        if (!hex && (ch == 'e' || ch == 'E')) {
          is_float = true;
          advance();
          if (peek() == '+' || peek() == '-') advance();
          continue;
        }
        if (hex && (ch == 'p' || ch == 'P')) {
          is_float = true;
          advance();
          if (peek() == '+' || peek() == '-') advance();
          continue;
        }
        if (!hex && (ch == 'f' || ch == 'F' || ch == 'd' || ch == 'D')) is_float = true;
        advance();
      } else if (ch == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        advance();
      } else if (ch == '.' && !hex && !is_float &&
                 !ident_start(static_cast<unsigned char>(peek(1)))) {
        // `1.` is a valid double literal; `1.foo` is not a number continuation.
        is_float = true;
        advance();
      } else {
        break;
      }
    }
    return make(is_float ? TokenKind::kFloatLiteral : TokenKind::kIntLiteral, start, line,
                column);
  }

  Token text_block(std::size_t start, int line, int column) {
    advance();
    advance();
    advance();
    while (true) {
      if (pos_ >= text_.size()) throw ParseError(line, "unterminated text block");
      if (peek() == '\\') {
        advance();
        if (pos_ < text_.size()) advance();
        continue;
      }
      if (peek() == '"' && peek(1) == '"' && peek(2) == '"') break;
      advance();
    }
    advance();
    advance();
    advance();
    return make(TokenKind::kStringLiteral, start, line, column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

bool is_primitive_type(std::string_view word) {
  return word == "int" || word == "long" || word == "short" || word == "byte" ||
         word == "char" || word == "boolean" || word == "float" || word == "double" ||
         word == "void";
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

double numeric_value(std::string_view literal) {
  std::string cleaned;
  cleaned.reserve(literal.size());
  for (char c : literal) {
    if (c != '_') cleaned.push_back(c);
  }
  if (cleaned.empty()) return std::numeric_limits<double>::quiet_NaN();
  const bool hex = cleaned.size() > 1 && cleaned[0] == '0' && (cleaned[1] == 'x' || cleaned[1] == 'X');
  const bool bin = cleaned.size() > 1 && cleaned[0] == '0' && (cleaned[1] == 'b' || cleaned[1] == 'B');
  char last = cleaned.back();
  if (last == 'l' || last == 'L' || (!hex && (last == 'f' || last == 'F' || last == 'd' || last == 'D'))) {
    cleaned.pop_back();
  }
  char* end = nullptr;
  if (bin) {
    unsigned long long v = std::strtoull(cleaned.c_str() + 2, &end, 2);
    return *end == '\0' ? static_cast<double>(v) : std::numeric_limits<double>::quiet_NaN();
  }
  bool integral = cleaned.find_first_of(".eEpP") == std::string::npos || (hex && cleaned.find_first_of(".pP") == std::string::npos);
  if (integral) {
    int base = hex ? 16 : (cleaned.size() > 1 && cleaned[0] == '0' ? 8 : 10);
    const char* digits = hex ? cleaned.c_str() + 2 : cleaned.c_str();
    unsigned long long v = std::strtoull(digits, &end, base);
    return *end == '\0' ? static_cast<double>(v) : std::numeric_limits<double>::quiet_NaN();
  }
  double v = std::strtod(cleaned.c_str(), &end);
  return *end == '\0' ? v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace refagent::source
