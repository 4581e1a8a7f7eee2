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

#include "refagent/toolchain/javacheck.h"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "refagent/error.h"
#include "refagent/source/parser.h"
#include "refagent/util/files.h"

namespace refagent::toolchain::javacheck {

namespace fs = std::filesystem;
using source::CallSite;
using source::DesignModel;
using source::MethodDecl;
using source::SourceUnit;
using source::TypeDecl;
using source::TypeKind;
using source::TypeRef;

namespace {

const std::set<std::string>& java_lang() {
  static const std::set<std::string> kNames = {
      "AbstractMethodError", "Appendable", "ArithmeticException",
      "ArrayIndexOutOfBoundsException", "ArrayStoreException", "AssertionError", "AutoCloseable",
      "Boolean", "Byte", "CharSequence", "Character", "Class", "ClassCastException",
      "ClassNotFoundException", "CloneNotSupportedException", "Cloneable", "Comparable",
      "Deprecated", "Double", "Enum", "Error", "Exception", "Float", "FunctionalInterface",
      "IllegalAccessException", "IllegalArgumentException", "IllegalMonitorStateException",
      "IllegalStateException", "IndexOutOfBoundsException", "InstantiationException", "Integer",
      "InterruptedException", "Iterable", "LinkageError", "Long", "Math",
      "NegativeArraySizeException", "NoSuchFieldException", "NoSuchMethodException",
      "NullPointerException", "Number", "NumberFormatException", "Object",
      "OutOfMemoryError", "Override", "Process", "ProcessBuilder", "Readable", "Record",
      "ReflectiveOperationException", "Runnable", "Runtime", "RuntimeException", "SafeVarargs",
      "SecurityException", "Short", "StackOverflowError", "StrictMath", "String", "StringBuffer",
      "StringBuilder", "StringIndexOutOfBoundsException", "SuppressWarnings", "System", "Thread",
      "ThreadLocal", "Throwable", "UnsupportedOperationException", "Void", "var"};
  return kNames;
}

const std::set<std::string>& object_methods() {
  static const std::set<std::string> kNames = {"equals", "hashCode", "toString", "getClass",
                                               "notify", "notifyAll", "wait", "clone",
                                               "finalize"};
  return kNames;
}

const std::set<std::string>& enum_methods() {
  static const std::set<std::string> kNames = {"values", "valueOf", "ordinal", "name",
                                               "compareTo", "getDeclaringClass"};
  return kNames;
}

std::string plural(int n, const std::string& word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

bool arity_fits(const MethodDecl& m, int arity) {
  const int n = static_cast<int>(m.params.size());
  if (!m.params.empty() && m.params.back().varargs) return arity >= n - 1;
  return arity == n;
}

class Checker {
 public:
  explicit Checker(const DesignModel& model) : model_(model) {
    for (const auto& [fqn, t] : model.types()) packages_.insert(t.package);
  }

  // Project types reachable upwards from `fqn` (itself first) and whether the
  // walk touched a supertype outside the project.
  std::vector<const TypeDecl*> lineage(const std::string& fqn, bool& open) const {
    std::vector<const TypeDecl*> out;
    std::set<std::string> seen;
    std::vector<std::string> work = {fqn};
    open = false;
    while (!work.empty()) {
      std::string cur = work.back();
      work.pop_back();
      if (!seen.insert(cur).second || !model_.contains(cur)) continue;
      const TypeDecl& t = model_.type(cur);
      out.push_back(&t);
      auto visit = [&](const TypeRef& r) {
        if (r.is_project()) {
          work.push_back(r.resolved);
        } else {
          open = true;
        }
      };
      if (t.supertype) visit(*t.supertype);
      for (const auto& i : t.interfaces) visit(i);
    }
    return out;
  }

  bool has_method(const std::string& fqn, const std::string& name, int arity) const {
    bool open = false;
    for (const TypeDecl* t : lineage(fqn, open)) {
      for (const auto& m : t->methods) {
        if (!m.is_constructor && m.name == name && arity_fits(m, arity)) return true;
      }
    }
    if (open || object_methods().count(name)) return true;
    return model_.type(fqn).kind == TypeKind::kEnum && enum_methods().count(name);
  }

  std::optional<std::string> check_constructor(const std::string& fqn, int arity) const {
    const TypeDecl& t = model_.type(fqn);
    if (t.kind != TypeKind::kClass) return std::nullopt;
    int declared = 0;
    for (const auto& m : t.methods) {
      if (!m.is_constructor) continue;
      ++declared;
      if (arity_fits(m, arity)) return std::nullopt;
    }
    if (declared == 0 && arity == 0) return std::nullopt;
    return "constructor " + t.simple_name + " in class " + fqn +
           " cannot be applied to given types (found " + plural(arity, "argument") + ")";
  }

  // Declared type of `name` as seen from method `m` of type `t`.
  std::optional<std::string> receiver_type(const std::string& name, const MethodDecl& m,
                                           const TypeDecl& t) const {
    for (const auto& l : m.body.locals) {
      if (l.name == name) return l.type.is_project() && l.type.dims == 0 ? l.type.resolved : "";
    }
    for (const auto& p : m.params) {
      if (p.name == name) return p.type.is_project() && p.type.dims == 0 ? p.type.resolved : "";
    }
    for (const TypeDecl* scope = &t; scope;) {
      bool open = false;
      for (const TypeDecl* s : lineage(scope->fqn, open)) {
        if (const auto* f = s->find_field(name)) {
          return f->type.is_project() && f->type.dims == 0 ? f->type.resolved : "";
        }
      }
      scope = scope->outer_fqn.empty() ? nullptr : &model_.type(scope->outer_fqn);
    }
    if (auto type = model_.resolve(name, t)) return *type;
    return std::nullopt;
  }

  // First problem with a call site, as a message.
  std::optional<std::string> check_call(const CallSite& c, const MethodDecl& m,
                                        const TypeDecl& t) const {
    if (c.receiver == "new") {
      auto fqn = model_.resolve(c.name, t);
      if (!fqn) return std::nullopt;
      return check_constructor(*fqn, c.arity);
    }
    if (c.receiver.empty() || c.receiver == "?" || c.receiver == "this" || c.receiver == "super") {
      return std::nullopt;
    }
    auto type = receiver_type(c.receiver, m, t);
    if (!type || type->empty() || has_method(*type, c.name, c.arity)) return std::nullopt;
    const TypeDecl& target = model_.type(*type);
    return "cannot find symbol: method " + c.name + " (" + plural(c.arity, "argument") +
           ") in " + source::to_string(target.kind) + " " + target.fqn;
  }

  bool known_external_name(const std::string& name, const SourceUnit& unit,
                           const TypeDecl& t) const {
    if (name.find('.') != std::string::npos || java_lang().count(name)) return true;
    for (const auto& imp : unit.imports) {
      if (imp.on_demand) {
        if (!imp.is_static && !packages_.count(imp.name)) return true;
        continue;
      }
      auto dot = imp.name.rfind('.');
      if (imp.name.substr(dot == std::string::npos ? 0 : dot + 1) == name) return true;
    }
    bool open = false;
    for (const TypeDecl* scope = &t; scope;) {
      lineage(scope->fqn, open);
      if (open) return true;  // could be a member type inherited from a library class
      scope = scope->outer_fqn.empty() ? nullptr : &model_.type(scope->outer_fqn);
    }
    return false;
  }

  void check_type_names(const SourceUnit& unit, const TypeDecl& t,
                        std::vector<Diagnostic>& out) const {
    auto check = [&](const TypeRef& r, int line) {
      if (r.external && !known_external_name(r.name, unit, t)) {
        out.push_back({unit.path, line, 0, Severity::kError, "cannot find symbol: class " + r.name});
      }
    };
    if (t.supertype) check(*t.supertype, t.line_range.start);
    for (const auto& i : t.interfaces) check(i, t.line_range.start);
    for (const auto& f : t.fields) check(f.type, f.line);
    for (const auto& m : t.methods) {
      const int line = m.line_range.start;
      if (!m.is_constructor) check(m.return_type, line);
      for (const auto& p : m.params) check(p.type, line);
      for (const auto& l : m.body.locals) check(l.type, line);
      for (const auto& c : m.body.calls) {
        if (c.receiver != "new") continue;
        for (const auto& inv : m.body.invoked_types) {
          if (inv.name == c.name) check(inv, c.line);
        }
      }
    }
  }

  void check_calls(const SourceUnit& unit, const TypeDecl& t, std::vector<Diagnostic>& out) const {
    for (const auto& m : t.methods) {
      for (const auto& c : m.body.calls) {
        if (auto problem = check_call(c, m, t)) {
          out.push_back({unit.path, c.line, 0, Severity::kError, *problem});
        }
      }
    }
  }

 private:
  const DesignModel& model_;
  std::set<std::string> packages_;
};

struct Loaded {
  std::vector<SourceUnit> units;
  std::optional<DesignModel> model;
  CompileReport report;
};

Loaded load(const fs::path& root, bool with_tests, const source::ProjectLayout& layout) {
  Loaded out;
  for (const auto& f : source::list_java_files(root, layout)) {
    if (f.is_test && !with_tests) continue;
    ++out.report.files;
    try {
      SourceUnit unit = source::parse_source(util::read_file(f.abs), f.rel);
      unit.is_test = f.is_test;
      out.units.push_back(std::move(unit));
    } catch (const ParseError& e) {
      out.report.errors.push_back({f.rel, e.line(), e.column(), Severity::kError, e.message()});
    }
  }
  if (!out.report.errors.empty()) return out;

  auto declaring = [&](const std::string& fqn) {
    std::vector<std::pair<std::string, int>> hits;
    for (const auto& u : out.units) {
      for (const auto& t : u.types) {
        if (t.fqn == fqn) hits.emplace_back(u.path, t.line_range.start);
      }
    }
    return hits;
  };
  try {
    out.model = DesignModel::build(out.units);
  } catch (const DuplicateType& e) {
    auto hits = declaring(e.subject());
    auto [file, line] = hits.size() > 1 ? hits[1] : hits.empty() ? std::pair{"", 0} : hits[0];
    out.report.errors.push_back({file, line, 0, Severity::kError, "duplicate class: " + e.subject()});
    return out;
  } catch (const CyclicHierarchy& e) {
    auto hits = declaring(e.subject());
    auto [file, line] = hits.empty() ? std::pair<std::string, int>{"", 0} : hits[0];
    out.report.errors.push_back(
        {file, line, 0, Severity::kError, "cyclic inheritance involving " + e.subject()});
    return out;
  }

  Checker checker(*out.model);
  for (const auto& unit : out.model->units()) {
    for (const auto& t : unit.types) {
      const TypeDecl& resolved = out.model->type(t.fqn);
      checker.check_type_names(unit, resolved, out.report.errors);
      if (!unit.is_test) checker.check_calls(unit, resolved, out.report.errors);
    }
  }
  std::stable_sort(out.report.errors.begin(), out.report.errors.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.file, a.line) < std::tie(b.file, b.line);
                   });
  return out;
}

bool has_annotation(const MethodDecl& m, std::initializer_list<const char*> names) {
  for (const auto& a : m.annotations) {
    for (const char* n : names) {
      if (a == n) return true;
    }
  }
  return false;
}

struct Literal {
  std::string text;
  bool numeric = false;
  double value = 0;
};

Literal make_literal(const std::string& text) {
  Literal lit{text};
  if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-')) {
    lit.numeric = true;
    std::string digits = text;
    if (std::isalpha(static_cast<unsigned char>(digits.back()))) digits.pop_back();
    lit.value = std::stod(digits);
  }
  return lit;
}

std::string display(const Literal& l) {
  if (l.text.size() >= 2 && (l.text.front() == '"' || l.text.front() == '\'')) {
    return l.text.substr(1, l.text.size() - 2);
  }
  if (l.numeric && std::isalpha(static_cast<unsigned char>(l.text.back()))) {
    return l.text.substr(0, l.text.size() - 1);
  }
  return l.text;
}

// Assertion failure on one source line, if its outcome is decided by literals.
std::optional<std::string> literal_assertion(const std::string& line) {
  static const std::string kLit =
      R"((-?\d+(?:\.\d+)?[lLdDfF]?|"(?:[^"\\]|\\.)*"|'(?:[^'\\]|\\.)'|true|false|null))";
  static const std::regex kFail(R"(\bfail\s*\(\s*("(?:[^"\\]|\\.)*")?\s*\))");
  static const std::regex kEquals(R"(\bassertEquals\s*\(\s*)" + kLit + R"(\s*,\s*)" + kLit +
                                  R"(\s*(?:,\s*"(?:[^"\\]|\\.)*"\s*)?\))");
  static const std::regex kTrue(R"(\bassertTrue\s*\(\s*false\s*[,)])");
  static const std::regex kFalse(R"(\bassertFalse\s*\(\s*true\s*[,)])");
  static const std::regex kNotNull(R"(\bassertNotNull\s*\(\s*null\s*[,)])");
  std::smatch m;
  if (std::regex_search(line, m, kFail)) {
    return m[1].matched ? display(make_literal(m[1])) : std::string();
  }
  if (std::regex_search(line, m, kEquals)) {
    Literal expected = make_literal(m[1]), actual = make_literal(m[2]);
    bool equal = expected.numeric && actual.numeric ? expected.value == actual.value
                                                    : expected.text == actual.text;
    if (!equal) return "expected: <" + display(expected) + "> but was: <" + display(actual) + ">";
    return std::nullopt;
  }
  if (std::regex_search(line, m, kTrue)) return "expected: <true> but was: <false>";
  if (std::regex_search(line, m, kFalse)) return "expected: <false> but was: <true>";
  if (std::regex_search(line, m, kNotNull)) return "expected: not <null>";
  return std::nullopt;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string simple_name(const std::string& fqn) {
  auto dot = fqn.rfind('.');
  return dot == std::string::npos ? fqn : fqn.substr(dot + 1);
}

std::string file_name(const std::string& path) { return fs::path(path).filename().string(); }

}  // namespace

CompileReport compile(const fs::path& root, bool with_tests, const source::ProjectLayout& layout) {
  return load(root, with_tests, layout).report;
}

std::string render_compile_log(const CompileReport& report) {
  std::ostringstream out;
  out << "[INFO] Checking " << plural(report.files, "source file") << "\n";
  if (report.errors.empty()) {
    out << "[INFO] BUILD SUCCESS\n";
    return out.str();
  }
  out << "[ERROR] COMPILATION ERROR : \n";
  out << "[INFO] -------------------------------------------------------------\n";
  for (const auto& d : report.errors) out << render(d) << "\n";
  out << "[INFO] " << plural(static_cast<int>(report.errors.size()), "error") << "\n";
  out << "[INFO] -------------------------------------------------------------\n";
  out << "[INFO] BUILD FAILURE\n";
  return out.str();
}

TestRun run_tests(const fs::path& root, const std::vector<std::string>& filter,
                  const source::ProjectLayout& layout) {
  TestRun run;
  Loaded loaded = load(root, true, layout);
  run.compile = loaded.report;
  if (!run.compile.errors.empty()) return run;
  const DesignModel& model = *loaded.model;
  Checker checker(model);

  auto selected = [&](const TypeDecl& t) {
    if (filter.empty()) return true;
    return std::any_of(filter.begin(), filter.end(), [&](const std::string& f) {
      return f == t.fqn || f == t.simple_name;
    });
  };

  for (const auto& fqn : model.test_types()) {
    const TypeDecl& t = model.type(fqn);
    if (!t.is_top_level() || t.kind != TypeKind::kClass || !selected(t)) continue;
    const auto lines = split_lines(model.unit_of(fqn).raw_text);
    for (const auto& m : t.methods) {
      if (!has_annotation(m, {"Test"})) continue;
      TestResult r{fqn, m.name, t.unit_path, m.line_range.start, TestStatus::kPass, ""};
      if (has_annotation(m, {"Disabled", "Ignore"})) {
        r.status = TestStatus::kSkipped;
        run.results.push_back(std::move(r));
        continue;
      }
      int first_line = m.line_range.end + 1;
      for (const auto& c : m.body.calls) {
        if (c.line >= first_line) continue;
        if (auto problem = checker.check_call(c, m, t)) {
          first_line = c.line;
          r.status = TestStatus::kError;
          r.message = "java.lang.NoSuchMethodError: " + *problem;
        }
      }
      for (int ln = m.line_range.start; ln < first_line && ln <= static_cast<int>(lines.size());
           ++ln) {
        if (auto failure = literal_assertion(lines[static_cast<std::size_t>(ln - 1)])) {
          first_line = ln;
          r.status = TestStatus::kFailure;
          r.message = "org.opentest4j.AssertionFailedError: " + *failure;
          break;
        }
      }
      if (r.status != TestStatus::kPass) r.line = first_line;
      run.results.push_back(std::move(r));
    }
  }
  return run;
}

std::string render_test_log(const TestRun& run) {
  if (!run.compile.errors.empty()) return render_compile_log(run.compile);
  std::ostringstream out;
  out << "[INFO] -------------------------------------------------------\n";
  out << "[INFO]  T E S T S\n";
  out << "[INFO] -------------------------------------------------------\n";
  int totals[4] = {0, 0, 0, 0};  // run, failures, errors, skipped
  std::vector<const TestResult*> failures, errors;
  for (std::size_t i = 0; i < run.results.size();) {
    std::size_t j = i;
    int counts[4] = {0, 0, 0, 0};
    const std::string& cls = run.results[i].test_class;
    for (; j < run.results.size() && run.results[j].test_class == cls; ++j) {
      const TestResult& r = run.results[j];
      ++counts[0];
      if (r.status == TestStatus::kFailure) ++counts[1], failures.push_back(&r);
      if (r.status == TestStatus::kError) ++counts[2], errors.push_back(&r);
      if (r.status == TestStatus::kSkipped) ++counts[3];
    }
    for (int k = 0; k < 4; ++k) totals[k] += counts[k];
    const bool bad = counts[1] + counts[2] > 0;
    out << "[INFO] Running " << cls << "\n";
    out << (bad ? "[ERROR] " : "[INFO] ") << "Tests run: " << counts[0]
        << ", Failures: " << counts[1] << ", Errors: " << counts[2] << ", Skipped: " << counts[3]
        << (bad ? " <<< FAILURE!" : "") << " - in " << cls << "\n";
    for (std::size_t k = i; k < j; ++k) {
      const TestResult& r = run.results[k];
      if (r.status != TestStatus::kFailure && r.status != TestStatus::kError) continue;
      out << "[ERROR] " << r.test_class << "." << r.method << "  <<< "
          << (r.status == TestStatus::kFailure ? "FAILURE" : "ERROR") << "!\n";
      out << r.message << "\n";
      out << "\tat " << r.test_class << "." << r.method << "(" << file_name(r.file) << ":"
          << r.line << ")\n\n";
    }
    i = j;
  }
  out << "[INFO] \n[INFO] Results:\n[INFO] \n";
  auto summary = [&](const char* label, const std::vector<const TestResult*>& items) {
    if (items.empty()) return;
    out << "[ERROR] " << label << ": \n";
    for (const auto* r : items) {
      std::string msg = r->message.substr(r->message.find(": ") + 2);
      out << "[ERROR]   " << simple_name(r->test_class) << "." << r->method << ":" << r->line << " "
          << msg << "\n";
    }
  };
  summary("Failures", failures);
  summary("Errors", errors);
  out << "[INFO] \n";
  const bool bad = totals[1] + totals[2] > 0;
  out << (bad ? "[ERROR] " : "[INFO] ") << "Tests run: " << totals[0] << ", Failures: " << totals[1]
      << ", Errors: " << totals[2] << ", Skipped: " << totals[3] << "\n";
  out << "[INFO] \n[INFO] " << (bad ? "BUILD FAILURE" : "BUILD SUCCESS") << "\n";
  return out.str();
}

int main(const std::vector<std::string>& args, std::string& out) {
  const std::string usage =
      "usage: refagent-javacheck compile <root>\n"
      "       refagent-javacheck test <root> [--tests A,B]\n";
  if (args.size() < 2 || (args[0] != "compile" && args[0] != "test")) {
    out = usage;
    return 2;
  }
  const fs::path root = args[1];
  std::vector<std::string> filter;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[0] == "test" && args[i] == "--tests" && i + 1 < args.size()) {
      std::stringstream list(args[++i]);
      for (std::string item; std::getline(list, item, ',');) {
        if (!item.empty()) filter.push_back(item);
      }
    } else {
      out = "unexpected argument '" + args[i] + "'\n" + usage;
      return 2;
    }
  }
  if (!fs::is_directory(root)) {
    out = "[ERROR] not a directory: " + root.string() + "\n";
    return 2;
  }
  // Report paths the way the caller named the root.
  auto relocate = [&](CompileReport& r) {
    for (auto& d : r.errors) d.file = (root / d.file).lexically_normal().generic_string();
  };
  if (args[0] == "compile") {
    CompileReport report = compile(root, false);
    relocate(report);
    out = render_compile_log(report);
    return report.errors.empty() ? 0 : 1;
  }
  TestRun run = run_tests(root, filter);
  relocate(run.compile);
  out = render_test_log(run);
  if (!run.compile.errors.empty()) return 1;
  for (const auto& r : run.results) {
    if (r.status == TestStatus::kFailure || r.status == TestStatus::kError) return 1;
  }
  return 0;
}

}  // namespace refagent::toolchain::javacheck
