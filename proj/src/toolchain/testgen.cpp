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

#include "refagent/toolchain/testgen.h"

#include <algorithm>
#include <regex>

#include "refagent/error.h"
#include "refagent/toolchain/process.h"
#include "refagent/util/files.h"

namespace refagent::toolchain {

namespace fs = std::filesystem;

namespace {

std::string package_of(const std::string& fqn) {
  auto dot = fqn.rfind('.');
  return dot == std::string::npos ? "" : fqn.substr(0, dot);
}

fs::path package_dir(const std::string& package) {
  fs::path dir;
  std::size_t start = 0;
  while (start <= package.size() && !package.empty()) {
    auto dot = package.find('.', start);
    dir /= package.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return dir;
}

std::vector<fs::path> java_files_in(const fs::path& dir, bool recursive) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  auto take = [&](const fs::directory_entry& e) {
    if (e.is_regular_file() && e.path().extension() == ".java") out.push_back(e.path());
  };
  if (recursive) {
    for (const auto& e : fs::recursive_directory_iterator(dir)) take(e);
  } else {
    for (const auto& e : fs::directory_iterator(dir)) take(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> install(const std::vector<fs::path>& sources, const std::string& package,
                              const fs::path& dest_dir) {
  std::vector<fs::path> created;
  for (const auto& src : sources) {
    fs::path dest = dest_dir / src.filename();
    util::write_file(dest, relocate_test_source(util::read_file(src), package));
    created.push_back(dest);
  }
  return created;
}

}  // namespace

std::string generated_package(const std::string& package) {
  return package.empty() ? kGeneratedPackage : package + "." + kGeneratedPackage;
}

std::string relocate_test_source(const std::string& text, const std::string& package) {
  static const std::regex kPackage(R"((^|\n)[ \t]*package[ \t]+[\w.]+[ \t]*;[^\n]*)");
  std::string header = "package " + generated_package(package) + ";";
  if (!package.empty()) header += "\n\nimport " + package + ".*;";
  std::smatch m;
  if (std::regex_search(text, m, kPackage)) {
    std::size_t at = static_cast<std::size_t>(m.position(0)) + m[1].length();
    std::size_t end = static_cast<std::size_t>(m.position(0) + m.length(0));
    return text.substr(0, at) + header + text.substr(end);
  }
  return header + "\n\n" + text;
}

std::vector<fs::path> StubTestGenerator::generate(const std::string& fqn, const fs::path& workspace) {
  if (!fs::is_directory(stub_dir_)) {
    throw GeneratorUnavailable("stub directory " + stub_dir_.string() + " does not exist");
  }
  const std::string package = package_of(fqn);
  return install(java_files_in(stub_dir_ / fqn, false), package,
                 workspace / test_root / package_dir(generated_package(package)));
}

ExternalTestGenerator::ExternalTestGenerator(std::vector<std::string> argv, int timeout_seconds)
    : argv_(std::move(argv)), timeout_seconds_(timeout_seconds) {}

std::vector<std::string> ExternalTestGenerator::default_command() {
  return {"evosuite", "-class", "${CLASS}", "-projectCP", "target/classes",
          "-Dtest_dir=${OUT}", "-Dcriterion=LINE:BRANCH"};
}

std::vector<fs::path> ExternalTestGenerator::generate(const std::string& fqn,
                                                      const fs::path& workspace) {
  if (argv_.empty() || !program_available(argv_[0])) {
    throw GeneratorUnavailable(argv_.empty() ? "no generator command" : argv_[0] + " not on PATH");
  }
  fs::path out = workspace / ".refagent" / "generator-out" / fqn;
  fs::remove_all(out);
  fs::create_directories(out);
  std::vector<std::string> argv;
  for (std::string a : argv_) {
    for (auto [var, value] : {std::pair<std::string, std::string>{"${CLASS}", fqn},
                              {"${OUT}", out.string()},
                              {"${WORKSPACE}", workspace.string()}}) {
      for (std::size_t p; (p = a.find(var)) != std::string::npos;) a.replace(p, var.size(), value);
    }
    argv.push_back(std::move(a));
  }
  CommandResult r = run_command(argv, workspace, timeout_seconds_);
  if (r.exit_code != 0) {
    throw ToolError(argv_[0] + " exited with status " + std::to_string(r.exit_code));
  }
  const std::string package = package_of(fqn);
  auto created = install(java_files_in(out, true), package,
                         workspace / test_root / package_dir(generated_package(package)));
  fs::remove_all(out);
  return created;
}

void remove_generated_tests(const fs::path& workspace, const std::string& test_root) {
  fs::path root = workspace / test_root;
  if (!fs::is_directory(root)) return;
  std::vector<fs::path> doomed;
  for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator();
       ++it) {
    if (it->is_directory() && it->path().filename() == kGeneratedPackage) {
      doomed.push_back(it->path());
      it.disable_recursion_pending();
    }
  }
  for (const auto& d : doomed) fs::remove_all(d);
}

std::vector<std::string> generated_test_classes(const std::vector<fs::path>& files,
                                                const fs::path& test_root_dir) {
  std::vector<std::string> out;
  for (const auto& f : files) {
    fs::path rel = fs::relative(f, test_root_dir);
    rel.replace_extension();
    std::string fqn = rel.generic_string();
    std::replace(fqn.begin(), fqn.end(), '/', '.');
    out.push_back(fqn);
  }
  return out;
}

}  // namespace refagent::toolchain
