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

#include "refagent/source/parser.h"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <optional>
#include <set>
#include <utility>

#include "refagent/error.h"
#include "refagent/source/lexer.h"

namespace refagent::source {

namespace {

using Terminators = std::initializer_list<std::string_view>;

bool is_statement_keyword(const Token& t) {
  if (t.kind != TokenKind::kKeyword) return false;
  static const std::set<std::string, std::less<>> kWords = {
      "return", "if",    "for",   "while",        "do",     "try",     "throw",
      "break",  "continue", "else", "synchronized", "assert", "case",   "default",
      "catch",  "finally",  "package", "import",    "interface", "enum",
  };
  return kWords.count(t.text) > 0;
}

bool is_operand_token(const Token& t) {
  if (t.is_identifier() || t.is_literal()) return true;
  if (t.kind != TokenKind::kKeyword) return false;
  return t.text == "this" || t.text == "super" || t.text == "null" || t.text == "true" ||
         t.text == "false" || is_primitive_type(t.text);
}

TypeRef named_type(const std::string& name) {
  TypeRef ref;
  ref.name = name;
  return ref;
}

bool is_modifier_word(const Token& t) {
  if (t.is_identifier()) return t.text == "sealed";
  return t.kind == TokenKind::kKeyword && ModifierSet::from_keyword(t.text).has_value();
}

class Parser {
 public:
  Parser(std::string_view text, std::string path) : text_(text), path_(std::move(path)) {}

  SourceUnit run() {
    toks_ = tokenize(text_);
    unit_.path = path_;
    unit_.raw_text = std::string(text_);
    unit_.line_count = count_lines(text_);
    compilation_unit();
    return std::move(unit_);
  }

 private:
  static int count_lines(std::string_view text) {
    if (text.empty()) return 0;
    int n = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
    if (text.back() != '\n') ++n;
    return n;
  }

  // ---- token cursor ------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& at(std::size_t i) const { return toks_[std::min(i, toks_.size() - 1)]; }
  const Token& ahead(std::size_t n) const { return at(pos_ + n); }
  const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
  bool at_end() const { return cur().kind == TokenKind::kEnd; }
  void advance() {
    if (!at_end()) ++pos_;
  }
  bool accept(std::string_view s) {
    if (cur().is(s)) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    if (t.kind == TokenKind::kEnd) {
      throw ParseError(std::max(1, t.line), "reached end of file while parsing").at_column(t.column);
    }
    throw ParseError(t.line, msg).at_column(t.column);
  }

  /// javac blames the end of the previous token for a missing terminator.
  [[noreturn]] void fail_missing(std::string_view what) const {
    if (at_end()) fail(cur(), "");
    const Token& p = prev();
    throw ParseError(p.line, "'" + std::string(what) + "' expected")
        .at_column(p.column + static_cast<int>(p.text.size()));
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail_missing(s);
  }

  std::string identifier(const char* what = "<identifier>") {
    if (!cur().is_identifier()) fail(cur(), std::string(what) + " expected");
    std::string name = cur().text;
    advance();
    return name;
  }

  std::string qualified_name() {
    std::string name = identifier();
    while (cur().is(".") && ahead(1).is_identifier()) {
      advance();
      name += "." + cur().text;
      advance();
    }
    return name;
  }

  // ---- types ---------------------------------------------------------------

  /// Skips `<...>` starting at `p` without throwing; false when the tokens
  /// cannot be a type-argument list.
  bool skip_type_args_at(std::size_t& p) const {
    if (!at(p).is("<")) return false;
    int depth = 0;
    std::size_t i = p;
    while (true) {
      const Token& t = at(i);
      if (t.is("<")) {
        ++depth;
      } else if (t.is(">")) {
        if (--depth == 0) {
          p = i + 1;
          return true;
        }
      } else if (!(t.is_identifier() || t.is(".") || t.is(",") || t.is("?") ||
                   t.is("extends") || t.is("super") || t.is("&") || t.is("[") ||
                   t.is("]") || t.is("@") ||
                   (t.kind == TokenKind::kKeyword && is_primitive_type(t.text)))) {
        return false;
      }
      ++i;
    }
  }

  void skip_annotations_at(std::size_t& p) const {
    while (at(p).is("@") && !at(p + 1).is("interface")) {
      ++p;
      if (!at(p).is_identifier()) return;
      ++p;
      while (at(p).is(".") && at(p + 1).is_identifier()) p += 2;
      if (at(p).is("(")) {
        int depth = 0;
        while (true) {
          const Token& t = at(p);
          if (t.kind == TokenKind::kEnd) return;
          if (t.is("(")) ++depth;
          if (t.is(")") && --depth == 0) {
            ++p;
            break;
          }
          ++p;
        }
      }
    }
  }

  /// Speculative, non-throwing type parse. Advances `p` on success.
  std::optional<TypeRef> type_at(std::size_t& p) const {
    std::size_t i = p;
    skip_annotations_at(i);
    TypeRef ref;
    const Token& first = at(i);
    if (first.kind == TokenKind::kKeyword && is_primitive_type(first.text)) {
      ref.name = first.text;
      ++i;
    } else if (first.is_identifier()) {
      ref.name = first.text;
      ++i;
      if (at(i).is("<") && !skip_type_args_at(i)) return std::nullopt;
      while (at(i).is(".") && at(i + 1).is_identifier()) {
        ref.name += "." + at(i + 1).text;
        i += 2;
        if (at(i).is("<") && !skip_type_args_at(i)) return std::nullopt;
      }
    } else {
      return std::nullopt;
    }
    while (true) {
      std::size_t j = i;
      skip_annotations_at(j);
      if (at(j).is("[") && at(j + 1).is("]")) {
        ++ref.dims;
        i = j + 2;
      } else {
        break;
      }
    }
    p = i;
    return ref;
  }

  TypeRef type() {
    std::size_t p = pos_;
    auto ref = type_at(p);
    if (!ref) fail(cur(), "<identifier> expected");
    pos_ = p;
    return *ref;
  }

  std::vector<std::string> type_params() {
    std::vector<std::string> names;
    if (!cur().is("<")) return names;
    std::size_t start = pos_;
    std::size_t p = pos_;
    if (!skip_type_args_at(p)) fail(cur(), "illegal start of type");
    int depth = 0;
    for (std::size_t i = start; i < p; ++i) {
      const Token& t = at(i);
      if (t.is("<")) {
        ++depth;
        if (depth == 1 && at(i + 1).is_identifier()) names.push_back(at(i + 1).text);
      } else if (t.is(">")) {
        --depth;
      } else if (t.is(",") && depth == 1 && at(i + 1).is_identifier()) {
        names.push_back(at(i + 1).text);
      }
    }
    pos_ = p;
    return names;
  }

  void skip_annotation() {
    advance();  // '@'
    qualified_name();
    if (cur().is("(")) skip_parens();
  }

  /// Modifiers and annotations preceding a declaration.
  ModifierSet modifiers(std::vector<std::string>* annotations = nullptr) {
    ModifierSet mods;
    while (true) {
      if (cur().is("@") && !ahead(1).is("interface")) {
        if (annotations && ahead(1).is_identifier()) {
          std::size_t p = pos_ + 1;
          std::string name = at(p).text;
          while (at(p + 1).is(".") && at(p + 2).is_identifier()) {
            p += 2;
            name = at(p).text;
          }
          annotations->push_back(name);
        }
        skip_annotation();
      } else if (cur().is_identifier() && cur().text == "non" && ahead(1).is("-") &&
                 ahead(2).is_identifier() && ahead(2).text == "sealed") {
        mods.add(Modifier::kNonSealed);
        advance();
        advance();
        advance();
      } else if (is_modifier_word(cur()) &&
                 !(cur().is("default") && (ahead(1).is(":") || ahead(1).is("->")))) {
        // `sealed` is contextual: only a modifier when a declaration follows.
        if (cur().is_identifier() && !(ahead(1).is("class") || ahead(1).is("interface") ||
                                       is_modifier_word(ahead(1)) || ahead(1).is("@"))) {
          break;
        }
        auto m = cur().is_identifier() ? std::optional<Modifier>(Modifier::kSealed)
                                       : ModifierSet::from_keyword(cur().text);
        mods.add(*m);
        advance();
      } else {
        break;
      }
    }
    return mods;
  }

  // ---- declarations -------------------------------------------------------

  void compilation_unit() {
    std::size_t p = pos_;
    skip_annotations_at(p);
    if (at(p).is("package")) {
      pos_ = p;
      advance();
      unit_.package = qualified_name();
      expect(";");
    }
    while (cur().is("import")) {
      advance();
      Import imp;
      if (cur().is("static")) {
        imp.is_static = true;
        advance();
      }
      imp.name = identifier();
      while (accept(".")) {
        if (accept("*")) {
          imp.on_demand = true;
          break;
        }
        imp.name += "." + identifier();
      }
      expect(";");
      unit_.imports.push_back(std::move(imp));
    }
    while (!at_end()) {
      if (accept(";")) continue;
      if (cur().is_identifier() && cur().text == "module") {
        fail(cur(), "module declarations are not supported");
      }
      if (cur().is("import") || cur().is("package")) {
        fail(cur(), "class, interface, or enum expected");
      }
      std::size_t start = pos_;
      ModifierSet mods = modifiers();
      type_declaration(mods, start, "", /*local=*/false);
    }
  }

  bool at_type_keyword() const {
    return cur().is("class") || cur().is("interface") || cur().is("enum") ||
           (cur().is("@") && ahead(1).is("interface")) ||
           (cur().is_identifier() && cur().text == "record" && ahead(1).is_identifier());
  }

  void type_declaration(ModifierSet mods, std::size_t start_tok, const std::string& outer,
                        bool local) {
    TypeDecl t;
    t.modifiers = mods;
    t.package = unit_.package;
    t.outer_fqn = outer;
    t.unit_path = path_;
    t.line_range.start = at(start_tok).line;

    if (cur().is_identifier() && cur().text == "record") {
      fail(cur(), "record declarations are not supported");
    }
    bool annotation_type = false;
    if (accept("class")) {
      t.kind = TypeKind::kClass;
    } else if (accept("interface")) {
      t.kind = TypeKind::kInterface;
    } else if (accept("enum")) {
      t.kind = TypeKind::kEnum;
    } else if (cur().is("@") && ahead(1).is("interface")) {
      advance();
      advance();
      t.kind = TypeKind::kInterface;
      annotation_type = true;
    } else {
      fail(cur(), "class, interface, or enum expected");
    }
    t.simple_name = identifier();
    if (!outer.empty()) {
      t.fqn = outer + "." + t.simple_name;
    } else {
      t.fqn = unit_.package.empty() ? t.simple_name : unit_.package + "." + t.simple_name;
    }
    if (t.kind == TypeKind::kInterface) t.modifiers.add(Modifier::kAbstract);
    t.type_params = type_params();

    auto type_list = [&]() {
      std::vector<TypeRef> refs;
      do {
        refs.push_back(type());
      } while (accept(","));
      return refs;
    };
    if (t.kind == TypeKind::kClass && accept("extends")) t.supertype = type();
    if (t.kind == TypeKind::kInterface && accept("extends")) t.interfaces = type_list();
    if (t.kind != TypeKind::kInterface && accept("implements")) t.interfaces = type_list();
    if (cur().is_identifier() && cur().text == "permits") {
      advance();
      type_list();
    }

    std::size_t index = 0;
    if (!local) {
      for (const auto& other : unit_.types) {
        if (other.fqn == t.fqn) fail(at(start_tok), "duplicate class: " + t.fqn);
      }
      index = unit_.types.size();
      unit_.types.emplace_back();
    }
    if (t.kind == TypeKind::kEnum) {
      enum_body(t, local);
    } else {
      class_body(t, local, annotation_type);
    }
    t.line_range.end = prev().line;
    resolve_field_accesses(t);
    if (!local) unit_.types[index] = std::move(t);
  }

  void class_body(TypeDecl& t, bool local, bool annotation_type = false) {
    if (!cur().is("{")) fail_missing("{");
    advance();
    while (!cur().is("}")) {
      if (at_end()) fail(cur(), "");
      member(t, local, annotation_type);
    }
    advance();
  }

  void enum_body(TypeDecl& t, bool local) {
    if (!cur().is("{")) fail_missing("{");
    advance();
    while (!cur().is(";") && !cur().is("}")) {
      if (at_end()) fail(cur(), "");
      std::size_t p = pos_;
      skip_annotations_at(p);
      pos_ = p;
      identifier("enum constant");
      if (cur().is("(")) skip_parens();
      if (cur().is("{")) {
        TypeDecl scratch;
        scratch.fqn = t.fqn + ".$constant";
        scratch.simple_name = "$constant";
        class_body(scratch, true);
      }
      if (!accept(",")) break;
    }
    if (accept(";")) {
      while (!cur().is("}")) {
        if (at_end()) fail(cur(), "");
        member(t, local, false);
      }
    }
    if (!accept("}")) fail_missing("}");
  }

  void member(TypeDecl& t, bool local, bool annotation_type) {
    if (accept(";")) return;
    const std::size_t start_tok = pos_;
    if (cur().is("{") || (cur().is("static") && ahead(1).is("{"))) {
      accept("static");
      block();
      return;
    }
    std::vector<std::string> annotations;
    ModifierSet mods = modifiers(&annotations);
    if (at_type_keyword()) {
      if (t.kind == TypeKind::kInterface) mods.add(Modifier::kStatic);
      type_declaration(mods, start_tok, t.fqn, local);
      return;
    }
    std::vector<std::string> method_type_params = type_params();

    if (cur().is_identifier() && cur().text == t.simple_name && ahead(1).is("(")) {
      MethodDecl m;
      m.name = t.simple_name;
      m.is_constructor = true;
      m.modifiers = mods;
      m.annotations = std::move(annotations);
      m.type_params = std::move(method_type_params);
      m.line_range.start = at(start_tok).line;
      advance();
      method_rest(t, m, start_tok, annotation_type);
      return;
    }

    TypeRef declared = type();
    if (!cur().is_identifier()) fail(cur(), "<identifier> expected");
    if (ahead(1).is("(")) {
      MethodDecl m;
      m.name = cur().text;
      m.return_type = declared;
      m.modifiers = mods;
      m.annotations = std::move(annotations);
      m.type_params = std::move(method_type_params);
      m.line_range.start = at(start_tok).line;
      advance();
      method_rest(t, m, start_tok, annotation_type);
      return;
    }
    if (!method_type_params.empty()) fail(cur(), "'(' expected");

    const bool in_interface = t.kind == TypeKind::kInterface;
    if (in_interface) {
      mods.add(Modifier::kPublic);
      mods.add(Modifier::kStatic);
      mods.add(Modifier::kFinal);
    }
    while (true) {
      FieldDecl f;
      f.line = cur().line;
      f.name = identifier();
      f.type = declared;
      f.modifiers = mods;
      f.is_constant = mods.has(Modifier::kStatic) && mods.has(Modifier::kFinal);
      while (cur().is("[") && ahead(1).is("]")) {
        advance();
        advance();
        ++f.type.dims;
      }
      if (accept("=")) {
        std::size_t init_start = pos_;
        if (cur().is("{")) {
          array_initializer();
        } else {
          expression({",", ";"}, /*relaxed=*/false, ";");
        }
        f.initializer_literals = collect_literals(init_start, pos_);
      }
      if (t.find_field(f.name)) {
        fail(at(pos_ - 1), "variable " + f.name + " is already defined in " + t.simple_name);
      }
      t.fields.push_back(std::move(f));
      if (accept(",")) continue;
      if (!accept(";")) fail_missing(";");
      break;
    }
  }

  void method_rest(TypeDecl& t, MethodDecl& m, std::size_t start_tok, bool annotation_type) {
    // cursor is on '('
    advance();
    if (!cur().is(")")) {
      while (true) {
        modifiers();
        Param param;
        param.type = type();
        if (accept("...")) {
          param.varargs = true;
          ++param.type.dims;
        }
        if (cur().is("this")) {
          advance();  // receiver parameter
        } else {
          param.name = identifier();
          while (cur().is("[") && ahead(1).is("]")) {
            advance();
            advance();
            ++param.type.dims;
          }
          m.params.push_back(std::move(param));
        }
        if (accept(",")) continue;
        break;
      }
    }
    if (!accept(")")) fail_missing(")");
    while (cur().is("[") && ahead(1).is("]")) {
      advance();
      advance();
      ++m.return_type.dims;
    }
    if (accept("throws")) {
      do {
        type();
      } while (accept(","));
    }

    const bool in_interface = t.kind == TypeKind::kInterface;
    if (cur().is("{")) {
      std::size_t open = pos_;
      block();
      std::size_t close = pos_ - 1;
      m.has_body = true;
      m.body = scan_body(start_tok, open, close);
    } else if (annotation_type && cur().is("default")) {
      advance();
      if (cur().is("{")) {
        array_initializer();
      } else {
        expression({";"}, false, ";");
      }
      expect(";");
    } else if (accept(";")) {
      m.has_body = false;
    } else {
      fail_missing(m.is_constructor ? "{" : ";");
    }
    if (in_interface) {
      if (!m.has_body && !m.modifiers.has(Modifier::kStatic)) m.modifiers.add(Modifier::kAbstract);
      if (!m.modifiers.has(Modifier::kPrivate)) m.modifiers.add(Modifier::kPublic);
    }
    m.line_range.end = prev().line;
    if (!m.has_body) m.body.loc = distinct_lines(start_tok, pos_ - 1);

    const std::string sig = m.signature();
    for (const auto& other : t.methods) {
      if (other.signature() == sig) {
        fail(at(start_tok), "method " + sig + " is already defined in " + t.simple_name);
      }
    }
    t.methods.push_back(std::move(m));
  }

  // ---- statements -----------------------------------------------------------

  void skip_parens() {
    // cursor on '(' ; validates nested expressions loosely
    advance();
    paren_contents();
    if (!accept(")")) fail_missing(")");
  }

  void paren_contents() {
    if (cur().is(")")) return;
    while (true) {
      expression({",", ")"}, /*relaxed=*/true, ")");
      if (!accept(",")) break;
    }
  }

  void block() {
    if (!accept("{")) fail_missing("{");
    while (!cur().is("}")) {
      if (at_end()) fail(cur(), "");
      statement();
    }
    advance();
  }

  void parenthesized_condition() {
    if (!accept("(")) fail_missing("(");
    expression({")"}, /*relaxed=*/false, ")");
    if (!accept(")")) fail_missing(")");
  }

  bool looks_like_local_decl() const {
    std::size_t p = pos_;
    while (true) {
      if (at(p).is("final")) {
        ++p;
      } else if (at(p).is("@") && !at(p + 1).is("interface")) {
        std::size_t before = p;
        skip_annotations_at(p);
        if (p == before) return false;
      } else {
        break;
      }
    }
    auto ref = type_at(p);
    if (!ref) return false;
    if (!at(p).is_identifier()) return false;
    const Token& after = at(p + 1);
    return after.is("=") || after.is(";") || after.is(",") || after.is(":") || after.is("[");
  }

  bool looks_like_local_type() const {
    std::size_t p = pos_;
    while (at(p).is("final") || at(p).is("abstract") || at(p).is("static") ||
           at(p).is("strictfp") || (at(p).is("@") && !at(p + 1).is("interface"))) {
      if (at(p).is("@")) {
        std::size_t before = p;
        skip_annotations_at(p);
        if (p == before) return false;
      } else {
        ++p;
      }
    }
    const Token& t = at(p);
    return t.is("class") || t.is("interface") || t.is("enum") ||
           (t.is_identifier() && t.text == "record" && at(p + 1).is_identifier());
  }

  void local_variable_declaration() {
    modifiers();
    type();
    while (true) {
      identifier();
      while (cur().is("[") && ahead(1).is("]")) {
        advance();
        advance();
      }
      if (accept("=")) {
        if (cur().is("{")) {
          array_initializer();
        } else {
          expression({",", ";"}, false, ";");
        }
      }
      if (!accept(",")) break;
    }
    if (!accept(";")) fail_missing(";");
  }

  void switch_body() {
    if (!accept("{")) fail_missing("{");
    while (!cur().is("}")) {
      if (at_end()) fail(cur(), "");
      bool is_default = false;
      if (accept("default")) {
        is_default = true;
      } else if (accept("case")) {
        while (true) {
          expression({",", ":", "->"}, /*relaxed=*/true, ":");
          if (!accept(",")) break;
        }
      } else {
        fail(cur(), "case, default, or '}' expected");
      }
      (void)is_default;
      if (accept("->")) {
        if (cur().is("{")) {
          block();
        } else if (cur().is("throw")) {
          statement();
        } else {
          expression({";"}, false, ";");
          if (!accept(";")) fail_missing(";");
        }
        continue;
      }
      if (!accept(":")) fail_missing(":");
      while (!cur().is("case") && !cur().is("default") && !cur().is("}")) {
        if (at_end()) fail(cur(), "");
        statement();
      }
    }
    advance();
  }

  void statement() {
    const Token& t = cur();
    if (t.is("{")) {
      block();
      return;
    }
    if (accept(";")) return;
    if (t.is("if")) {
      advance();
      parenthesized_condition();
      statement();
      if (accept("else")) statement();
      return;
    }
    if (t.is("while")) {
      advance();
      parenthesized_condition();
      statement();
      return;
    }
    if (t.is("do")) {
      advance();
      statement();
      if (!accept("while")) fail_missing("while");
      parenthesized_condition();
      if (!accept(";")) fail_missing(";");
      return;
    }
    if (t.is("for")) {
      advance();
      if (!cur().is("(")) fail_missing("(");
      skip_balanced();
      statement();
      return;
    }
    if (t.is("try")) {
      advance();
      bool resources = false;
      if (cur().is("(")) {
        skip_balanced();
        resources = true;
      }
      block();
      bool handlers = false;
      while (cur().is("catch")) {
        advance();
        if (!cur().is("(")) fail_missing("(");
        skip_balanced();
        block();
        handlers = true;
      }
      if (accept("finally")) {
        block();
        handlers = true;
      }
      if (!handlers && !resources) fail(cur(), "'catch' or 'finally' expected");
      return;
    }
    if (t.is("switch")) {
      advance();
      parenthesized_condition();
      switch_body();
      return;
    }
    if (t.is("synchronized")) {
      advance();
      parenthesized_condition();
      block();
      return;
    }
    if (t.is("return") || t.is("throw")) {
      bool is_throw = t.is("throw");
      advance();
      if (!cur().is(";")) {
        expression({";"}, false, ";");
      } else if (is_throw) {
        fail(cur(), "illegal start of expression");
      }
      if (!accept(";")) fail_missing(";");
      return;
    }
    if (t.is("break") || t.is("continue")) {
      advance();
      if (cur().is_identifier()) advance();
      if (!accept(";")) fail_missing(";");
      return;
    }
    if (t.is("assert")) {
      advance();
      expression({";", ":"}, false, ";");
      if (accept(":")) expression({";"}, false, ";");
      if (!accept(";")) fail_missing(";");
      return;
    }
    if (t.is_identifier() && t.text == "yield" && !ahead(1).is("=") && !ahead(1).is("(") &&
        !ahead(1).is(".") && !ahead(1).is(";")) {
      advance();
      expression({";"}, false, ";");
      if (!accept(";")) fail_missing(";");
      return;
    }
    if (t.is_identifier() && ahead(1).is(":")) {
      advance();
      advance();
      statement();
      return;
    }
    if (looks_like_local_type()) {
      std::size_t start = pos_;
      ModifierSet mods = modifiers();
      type_declaration(mods, start, "$local", /*local=*/true);
      return;
    }
    if (t.is("else") || t.is("catch") || t.is("finally") || t.is("case") || t.is("default")) {
      fail(t, "illegal start of statement");
    }
    if (looks_like_local_decl()) {
      local_variable_declaration();
      return;
    }
    expression({";"}, false, ";");
    if (!accept(";")) fail_missing(";");
  }

  /// Skips a balanced (...) group; used for for-headers, catch clauses and
  /// try resources whose contents mix declarations and expressions.
  void skip_balanced() {
    int depth = 0;
    do {
      const Token& t = cur();
      if (at_end()) fail(t, "");
      if (t.is("(") || t.is("[")) {
        ++depth;
      } else if (t.is(")") || t.is("]")) {
        --depth;
      } else if (t.is("{")) {
        // lambda bodies or anonymous classes inside the header
        if (prev().is("->")) {
          block();
        } else if (prev().is(")")) {
          TypeDecl scratch;
          class_body(scratch, true);
        } else {
          array_initializer();
        }
        continue;
      } else if (t.is("}")) {
        fail(t, "')' expected");
      }
      advance();
    } while (depth > 0);
  }

  void array_initializer() {
    if (!accept("{")) fail_missing("{");
    while (!cur().is("}")) {
      if (at_end()) fail(cur(), "");
      if (cur().is("{")) {
        array_initializer();
      } else {
        expression({",", "}"}, false, "}");
      }
      if (!accept(",")) break;
    }
    if (!accept("}")) fail_missing("}");
  }

  bool range_is_type(std::size_t first, std::size_t last_exclusive) const {
    if (first >= last_exclusive) return false;
    std::size_t p = first;
    auto ref = type_at(p);
    if (!ref) return false;
    while (p < last_exclusive && at(p).is("&")) {
      ++p;
      if (!type_at(p)) return false;
    }
    return p == last_exclusive;
  }

  void creator() {
    // cursor after `new`
    std::size_t p = pos_;
    skip_annotations_at(p);
    pos_ = p;
    if (cur().kind == TokenKind::kKeyword && is_primitive_type(cur().text)) {
      advance();
    } else {
      identifier();
      if (cur().is("<")) {
        std::size_t q = pos_;
        if (!skip_type_args_at(q)) fail(cur(), "illegal start of type");
        pos_ = q;
      }
      while (cur().is(".") && ahead(1).is_identifier()) {
        advance();
        advance();
        if (cur().is("<")) {
          std::size_t q = pos_;
          if (!skip_type_args_at(q)) fail(cur(), "illegal start of type");
          pos_ = q;
        }
      }
    }
    if (cur().is("[")) {
      while (accept("[")) {
        if (!cur().is("]")) expression({"]"}, false, "]");
        if (!accept("]")) fail_missing("]");
      }
      if (cur().is("{")) array_initializer();
      return;
    }
    if (!cur().is("(")) fail_missing("(");
    skip_parens();
    if (cur().is("{")) {
      TypeDecl scratch;
      scratch.simple_name = "$anonymous";
      scratch.fqn = "$anonymous";
      class_body(scratch, true);
    }
  }

  bool is_terminator(const Token& t, Terminators terms) const {
    for (auto s : terms) {
      if (t.is(s)) return true;
    }
    return false;
  }

  /// Consumes one expression, stopping before any terminator at depth 0.
  /// Outside of `relaxed` contexts two operands in a row (no operator) mean
  /// a missing `closer`, which is how a dropped semicolon surfaces.
  void expression(Terminators terms, bool relaxed, std::string_view closer) {
    bool operand_end = false;
    int ternary = 0;
    bool any = false;
    while (true) {
      const Token& t = cur();
      if (at_end()) fail(t, "");
      if (t.is(":") && ternary > 0) {
        --ternary;
        advance();
        operand_end = false;
        continue;
      }
      if (is_terminator(t, terms)) break;
      any = true;
      if (t.is(")") || t.is("]") || t.is("}") || t.is(";") || t.is(",")) {
        if (operand_end || t.is(";")) fail_missing(closer);
        fail(t, "illegal start of expression");
      }
      if (t.is("?")) {
        ++ternary;
        advance();
        operand_end = false;
        continue;
      }
      if (t.is("(")) {
        const bool call = operand_end;
        std::size_t open = pos_;
        advance();
        paren_contents();
        std::size_t close = pos_;
        if (!accept(")")) fail_missing(")");
        const bool cast = !call && range_is_type(open + 1, close) && !cur().is("->") &&
                          (is_operand_token(cur()) || cur().is("(") || cur().is("new") ||
                           cur().is("!") || cur().is("~"));
        operand_end = !cast;
        continue;
      }
      if (t.is("[")) {
        advance();
        if (!cur().is("]")) expression({"]"}, false, "]");
        if (!accept("]")) fail_missing("]");
        operand_end = true;
        continue;
      }
      if (t.is("{")) {
        if (prev().is("->")) {
          block();
        } else {
          array_initializer();
        }
        operand_end = true;
        continue;
      }
      if (t.is("switch")) {
        if (operand_end && !relaxed) fail_missing(closer);
        advance();
        parenthesized_condition();
        switch_body();
        operand_end = true;
        continue;
      }
      if (t.is("new")) {
        if (prev().is("::")) {
          advance();
          operand_end = true;
          continue;
        }
        if (operand_end && !relaxed) fail_missing(closer);
        advance();
        creator();
        operand_end = true;
        continue;
      }
      if (t.is("instanceof")) {
        advance();
        accept("final");
        type();
        if (cur().is_identifier()) advance();
        operand_end = true;
        continue;
      }
      if (t.is("class") && prev().is(".")) {
        advance();
        operand_end = true;
        continue;
      }
      if (t.is("@")) {
        skip_annotation();
        continue;
      }
      if (is_statement_keyword(t) || t.is("class")) {
        if (operand_end) fail_missing(closer);
        fail(t, "illegal start of expression");
      }
      if (is_operand_token(t)) {
        if (operand_end && !relaxed) fail_missing(closer);
        advance();
        operand_end = true;
        continue;
      }
      // Operators. Postfix ++/-- keep the operand open.
      if (t.kind != TokenKind::kOperator) fail(t, "illegal start of expression");
      const bool postfix = (t.is("++") || t.is("--")) && operand_end;
      advance();
      operand_end = postfix;
    }
    if (!any) fail(cur(), "illegal start of expression");
  }

  // ---- body scan ------------------------------------------------------------

  int distinct_lines(std::size_t first, std::size_t last) const {
    std::set<int> lines;
    for (std::size_t i = first; i <= last && i < toks_.size(); ++i) {
      if (toks_[i].kind != TokenKind::kEnd) lines.insert(toks_[i].line);
    }
    return static_cast<int>(lines.size());
  }

  bool negates_literal(std::size_t minus_index) const {
    if (minus_index == 0) return true;
    const Token& before = toks_[minus_index - 1];
    if (before.is_identifier() || before.is_literal() || before.is(")") || before.is("]") ||
        before.is("this") || before.is("super") || before.is("++") || before.is("--")) {
      return false;
    }
    return true;
  }

  std::vector<NumericLiteral> collect_literals(std::size_t first, std::size_t last_exclusive) const {
    std::vector<NumericLiteral> out;
    for (std::size_t i = first; i < last_exclusive; ++i) {
      const Token& t = toks_[i];
      if (!t.is_number()) continue;
      NumericLiteral lit;
      lit.text = t.text;
      lit.value = numeric_value(t.text);
      lit.line = t.line;
      if (i > first && toks_[i - 1].is("-") && negates_literal(i - 1)) {
        lit.text = "-" + lit.text;
        lit.value = -lit.value;
      }
      out.push_back(std::move(lit));
    }
    return out;
  }

  /// Counts top-level arguments of the paren group opening at `open`.
  int arity_at(std::size_t open) const {
    if (toks_[open + 1].is(")")) return 0;
    int depth = 0;
    int commas = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.is("(") || t.is("[") || t.is("{")) {
        ++depth;
      } else if (t.is(")") || t.is("]") || t.is("}")) {
        if (--depth == 0) break;
      } else if (t.is("new")) {
        std::size_t p = i + 1;
        while (at(p).is_identifier() || at(p).is(".")) ++p;
        if (at(p).is("<")) {
          std::size_t q = p;
          if (skip_type_args_at(q)) i = q - 1;
        }
      } else if (t.is(",") && depth == 1) {
        ++commas;
      }
    }
    return commas + 1;
  }

  TypeRef type_ending_at(std::size_t last) const {
    // Walks back from the last token of a type (identifier, '>' or ']').
    TypeRef ref;
    std::size_t i = last;
    while (i > 0 && toks_[i].is("]") && toks_[i - 1].is("[")) {
      ++ref.dims;
      if (i < 2) return ref;
      i -= 2;
    }
    if (toks_[i].is(">")) {
      int depth = 0;
      while (i > 0) {
        if (toks_[i].is(">")) ++depth;
        if (toks_[i].is("<") && --depth == 0) break;
        --i;
      }
      if (i == 0) return ref;
      --i;
    }
    if (!(toks_[i].is_identifier() ||
          (toks_[i].kind == TokenKind::kKeyword && is_primitive_type(toks_[i].text)))) {
      return ref;
    }
    std::string name = toks_[i].text;
    while (i >= 2 && toks_[i - 1].is(".") && toks_[i - 2].is_identifier()) {
      name = toks_[i - 2].text + "." + name;
      i -= 2;
    }
    ref.name = name;
    return ref;
  }

  BodyStats scan_body(std::size_t decl_start, std::size_t open, std::size_t close) const {
    BodyStats stats;
    stats.loc = distinct_lines(decl_start, close);
    std::set<std::string> seen_types;
    std::set<std::string> local_names;

    for (std::size_t i = open + 1; i < close; ++i) {
      const Token& t = toks_[i];
      const Token& before = toks_[i - 1];
      const Token& after = toks_[i + 1];

      if (t.is("if") || t.is("for") || t.is("while") || t.is("case") || t.is("catch") ||
          t.is("&&") || t.is("||")) {
        ++stats.decision_points;
      } else if (t.is("?") && !(after.is(">") || after.is(",") || after.is("extends") ||
                                after.is("super"))) {
        ++stats.decision_points;
      }

      if (t.is("new")) {
        std::size_t p = i + 1;
        skip_annotations_at(p);
        if (at(p).is_identifier()) {
          std::string name = at(p).text;
          ++p;
          while (at(p).is(".") && at(p + 1).is_identifier()) {
            name += "." + at(p + 1).text;
            p += 2;
          }
          if (at(p).is("<")) skip_type_args_at(p);
          if (at(p).is("(")) {
            stats.calls.push_back({"new", name, arity_at(p), t.line});
            if (seen_types.insert(name).second) stats.invoked_types.push_back(named_type(name));
          }
        }
        continue;
      }

      if (!t.is_identifier() || before.is("@")) continue;

      if (after.is("(")) {
        const bool declaration = before.is_identifier() || before.is(">") || before.is("]") ||
                                 (before.kind == TokenKind::kKeyword && is_primitive_type(before.text));
        if (declaration || before.is("new")) continue;
        if (before.is(".")) {
          const Token& recv = toks_[i - 2];
          std::string receiver = "?";
          if ((recv.is_identifier() && !(i >= 3 && toks_[i - 3].is("."))) || recv.is("this") ||
              recv.is("super")) {
            receiver = recv.text;
          }
          stats.calls.push_back({receiver, t.text, arity_at(i + 1), t.line});
        } else if (!before.is("::")) {
          stats.calls.push_back({"", t.text, arity_at(i + 1), t.line});
        }
        continue;
      }

      // Static-looking references: `Type.member` with a capitalized head.
      if (after.is(".") && !before.is(".") && std::isupper(static_cast<unsigned char>(t.text[0])) &&
          !local_names.count(t.text)) {
        if (seen_types.insert(t.text).second) stats.invoked_types.push_back(named_type(t.text));
      }

      // Local declarations: `<type> name` followed by a declarator terminator.
      if ((before.is_identifier() || before.is(">") || before.is("]") ||
           (before.kind == TokenKind::kKeyword && is_primitive_type(before.text) &&
            before.text != "void")) &&
          (after.is("=") || after.is(";") || after.is(",") || after.is(":") || after.is(")"))) {
        TypeRef ty = type_ending_at(i - 1);
        if (!ty.name.empty()) {
          if (local_names.insert(t.text).second) stats.locals.push_back({t.text, ty});
          continue;
        }
      }

      if (before.is(".")) {
        if (toks_[i - 2].is("this") && !(i >= 3 && toks_[i - 3].is("."))) {
          stats.referenced_names.insert("this." + t.text);
        }
      } else {
        stats.referenced_names.insert(t.text);
      }
    }
    stats.numeric_literals = collect_literals(open + 1, close);
    return stats;
  }

  static void resolve_field_accesses(TypeDecl& t) {
    for (auto& m : t.methods) {
      std::set<std::string> shadowed;
      for (const auto& p : m.params) shadowed.insert(p.name);
      for (const auto& l : m.body.locals) shadowed.insert(l.name);
      for (const auto& ref : m.body.referenced_names) {
        if (ref.rfind("this.", 0) == 0) {
          std::string name = ref.substr(5);
          if (t.find_field(name)) m.body.accessed_fields.insert(name);
        } else if (t.find_field(ref) && !shadowed.count(ref)) {
          m.body.accessed_fields.insert(ref);
        }
      }
      m.body.referenced_names.clear();
    }
  }

  std::string_view text_;
  std::string path_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SourceUnit unit_;
};

}  // namespace

SourceUnit parse_source(std::string_view text, const std::string& path) {
  return Parser(text, path).run();
}

}  // namespace refagent::source
