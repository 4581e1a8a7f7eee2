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

// Random Java class generator for property tests. A GenClass is the ground
// truth: oracles compute expected metrics from it directly, never from the
// parser's output.

#ifndef REFAGENT_TESTS_SUPPORT_JAVA_GEN_H_
#define REFAGENT_TESTS_SUPPORT_JAVA_GEN_H_

#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace refagent::testing {

struct GenField {
  std::string name;
  std::string type;
  std::string visibility;  // "public", "protected", "private", ""
  bool is_static = false;
  bool is_final = false;
};

struct GenParam {
  std::string type;
  std::string name;
};

struct GenMethod {
  std::string name;
  std::string return_type = "void";
  std::vector<GenParam> params;
  std::string visibility;
  bool is_static = false;
  bool is_final = false;
  bool is_constructor = false;
  std::vector<std::string> touched_fields;  // accessed via this.<name>
  std::vector<std::string> created_types;   // `new T()` expressions
  std::string extra_body;                   // decision-point noise
};

struct GenClass {
  std::string package = "gen";
  std::string name;
  std::string supertype;  // simple name, may be empty
  std::vector<GenField> fields;
  std::vector<GenMethod> methods;

  std::string fqn() const { return package + "." + name; }
};

class JavaGen {
 public:
  explicit JavaGen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  /// A random statement sequence exercising every decision-point construct.
  std::string statements(int depth) {
    std::ostringstream out;
    int n = uniform(1, 4);
    for (int i = 0; i < n; ++i) {
      int kind = depth <= 0 ? uniform(0, 3) : uniform(0, 12);
      switch (kind) {
        case 0:
          out << "int v" << counter_++ << " = a > b ? a : b;\n";
          break;
        case 1:
          out << "boolean w" << counter_++ << " = a > 0 && b < 3 || a == b;\n";
          break;
        case 2:
          out << "String s" << counter_++ << " = \"if (x) for while case catch && || ? :\";\n";
          break;
        case 3:
          out << "// if for while case catch && ||\n/* case ? catch */ a++;\n";
          break;
        case 4:
          out << "if (a > b) {\n" << statements(depth - 1) << "} else if (a < b) {\n"
              << statements(depth - 1) << "} else {\n" << statements(depth - 1) << "}\n";
          break;
        case 5:
          out << "for (int i" << counter_ << " = 0; i" << counter_ << " < 3; i" << counter_
              << "++) {\n" << statements(depth - 1) << "}\n";
          ++counter_;
          break;
        case 6:
          out << "while (a < 10 && b > 0) {\n" << statements(depth - 1) << "a++;\n}\n";
          break;
        case 7:
          out << "do {\n" << statements(depth - 1) << "b--;\n} while (b > 0);\n";
          break;
        case 8: {
          out << "switch (a) {\n";
          int cases = uniform(1, 3);
          for (int c = 0; c < cases; ++c) {
            out << "case " << c << ":\n" << statements(depth - 1) << "break;\n";
          }
          if (coin()) out << "default:\nbreak;\n";
          out << "}\n";
          break;
        }
        case 9:
          out << "try {\n" << statements(depth - 1)
              << "} catch (IllegalStateException e) {\na = 0;\n} catch (RuntimeException e) {\nb = 0;\n} finally {\na++;\n}\n";
          break;
        case 10:
          out << "Runnable r" << counter_++ << " = () -> {\nif (flag) {\nflag = false;\n}\n};\n";
          break;
        case 11:
          out << "Object o" << counter_++
              << " = new Object() {\n@Override\npublic String toString() {\nreturn a > 1 ? \"x\" : \"y\";\n}\n};\n";
          break;
        default:
          out << "for (String item : names) {\nif (item.isEmpty() || item.length() > 3) {\ncontinue;\n}\n}\n";
          break;
      }
    }
    return out.str();
  }

  /// A standalone method with random control flow; locals a, b, flag and
  /// names are declared at the top.
  std::string method_with_control_flow(const std::string& name) {
    std::ostringstream out;
    out << "  public int " << name << "(int a, int b, boolean flag, java.util.List<String> names) {\n"
        << statements(3) << "return a;\n  }\n";
    return out.str();
  }

  /// A random class over a pool of project types `gen.T0..gen.T<pool-1>`.
  GenClass random_class(const std::string& name, int pool) {
    GenClass c;
    c.name = name;
    if (coin(0.3)) c.supertype = "T" + std::to_string(uniform(0, pool - 1));
    if (c.supertype == name) c.supertype.clear();
    std::vector<std::string> types = {"int", "long", "String", "double", "boolean",
                                      "java.util.List"};
    for (int i = 0; i < pool; ++i) types.push_back("T" + std::to_string(i));
    const std::vector<std::string> vis = {"public", "protected", "private", ""};

    int nfields = uniform(0, 6);
    for (int i = 0; i < nfields; ++i) {
      GenField f;
      f.name = "f" + std::to_string(i);
      f.type = pick(types);
      f.visibility = pick(vis);
      f.is_static = coin(0.2);
      f.is_final = f.is_static && coin(0.5);
      c.fields.push_back(f);
    }
    int nmethods = uniform(0, 7);
    std::set<std::string> sigs;
    for (int i = 0; i < nmethods; ++i) {
      GenMethod m;
      m.name = "m" + std::to_string(uniform(0, 9));
      m.visibility = pick(vis);
      m.is_static = coin(0.15);
      m.is_final = coin(0.15);
      m.return_type = coin(0.5) ? "void" : pick(types);
      int np = uniform(0, 4);
      std::string sig = m.name + "(";
      for (int p = 0; p < np; ++p) {
        GenParam gp{pick(types), "p" + std::to_string(p)};
        sig += gp.type + ",";
        m.params.push_back(gp);
      }
      if (!sigs.insert(sig).second) continue;
      for (const auto& f : c.fields) {
        if (!m.is_static && !f.is_static && coin(0.4)) m.touched_fields.push_back(f.name);
      }
      if (coin(0.3)) m.created_types.push_back("T" + std::to_string(uniform(0, pool - 1)));
      if (coin(0.5)) m.extra_body = "int a = 1, b = 2; boolean flag = a > b;\n" + statements_simple();
      c.methods.push_back(m);
    }
    if (coin(0.4)) {
      GenMethod ctor;
      ctor.is_constructor = true;
      ctor.name = name;
      ctor.visibility = "public";
      ctor.params.push_back({"int", "seed"});
      c.methods.push_back(ctor);
    }
    return c;
  }

 private:
  std::string statements_simple() {
    std::ostringstream out;
    if (coin()) out << "if (a > b && flag) {\na = b;\n}\n";
    if (coin()) out << "for (int i = 0; i < 4; i++) {\nb += i;\n}\n";
    if (coin()) out << "a = flag ? a : b;\n";
    return out.str();
  }

  std::mt19937 rng_;
  int counter_ = 0;
};

inline std::string default_value(const std::string& type) {
  if (type == "void") return "";
  if (type == "int" || type == "long" || type == "double") return "0";
  if (type == "boolean") return "false";
  return "null";
}

inline std::string render(const GenClass& c) {
  std::ostringstream out;
  out << "package " << c.package << ";\n\n";
  out << "public class " << c.name;
  if (!c.supertype.empty()) out << " extends " << c.supertype;
  out << " {\n";
  for (const auto& f : c.fields) {
    out << "  ";
    if (!f.visibility.empty()) out << f.visibility << " ";
    if (f.is_static) out << "static ";
    if (f.is_final) out << "final ";
    out << f.type << " " << f.name;
    if (f.is_final) out << " = " << (default_value(f.type).empty() ? "null" : default_value(f.type));
    out << ";\n";
  }
  for (const auto& m : c.methods) {
    out << "  ";
    if (!m.visibility.empty()) out << m.visibility << " ";
    if (m.is_static) out << "static ";
    if (m.is_final) out << "final ";
    if (!m.is_constructor) out << m.return_type << " ";
    out << m.name << "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i) out << ", ";
      out << m.params[i].type << " " << m.params[i].name;
    }
    out << ") {\n";
    for (const auto& f : m.touched_fields) out << "    System.out.println(this." << f << ");\n";
    for (const auto& t : m.created_types) out << "    Object made = new " << t << "();\n";
    out << m.extra_body;
    if (!m.is_constructor && m.return_type != "void") {
      out << "    return " << default_value(m.return_type) << ";\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

/// Token-rule oracle for decision points: strips comments and string
/// literals with regexes, then counts keyword/operator occurrences.
inline int oracle_decision_points(const std::string& java) {
  std::string text = std::regex_replace(java, std::regex(R"(//[^\n]*)"), "");
  text = std::regex_replace(text, std::regex(R"(/\*[\s\S]*?\*/)"), "");
  text = std::regex_replace(text, std::regex(R"("(\\.|[^"\\])*")"), "\"\"");
  int count = 0;
  for (const char* pattern : {R"(\bif\b)", R"(\bfor\b)", R"(\bwhile\b)", R"(\bcase\b)",
                              R"(\bcatch\b)", R"(&&)", R"(\|\|)", R"( \? )"}) {
    std::regex re(pattern);
    count += static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re),
                                            std::sregex_iterator()));
  }
  return count;
}

}  // namespace refagent::testing

#endif  // REFAGENT_TESTS_SUPPORT_JAVA_GEN_H_
