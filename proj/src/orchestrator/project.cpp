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

#include "refagent/orchestrator/project.h"

#include <fmt/format.h>

#include <algorithm>
#include <random>
#include <set>

#include "refagent/depgraph/graph.h"
#include "refagent/error.h"
#include "refagent/metrics/metrics.h"
#include "refagent/quality/qmood.h"
#include "refagent/smells/smells.h"
#include "refagent/toolchain/build.h"
#include "refagent/util/files.h"

namespace refagent::orchestrator {

namespace fs = std::filesystem;

std::vector<std::string> seeded_permutation(std::vector<std::string> items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng() % i;
    std::swap(items[i - 1], items[j]);
  }
  return items;
}

nlohmann::json ProjectReport::to_json() const {
  nlohmann::json sessions_json = nlohmann::json::array();
  for (const auto& s : sessions) {
    sessions_json.push_back({{"class", s.fqn},
                             {"verdict", orchestrator::to_string(s.verdict)},
                             {"reason", s.reason},
                             {"compile_attempts", s.compile_attempts},
                             {"test_attempts", s.test_attempts}});
  }
  return {{"seed", seed}, {"order", order}, {"sessions", sessions_json}, {"tallies", tallies}};
}

nlohmann::json analyze_workspace(const fs::path& workspace, const EngineConfig& config) {
  auto model = source::load_design_model(workspace, config.layout);
  auto graph = depgraph::extract_dependencies(model);
  auto design = metrics::compute_design_metrics(model, graph);
  return {{"metrics", metrics::to_json(design)},
          {"qmood", quality::qmood_attributes(design.aggregate, config.coefficients()).to_json()},
          {"smells", smells::to_json(smells::detect_smells(model, graph, config.thresholds))}};
}

std::unique_ptr<toolchain::TestGenerator> make_test_generator(const EngineConfig& config) {
  std::unique_ptr<toolchain::TestGenerator> gen;
  if (config.test_generator == "stub") {
    gen = std::make_unique<toolchain::StubTestGenerator>(config.stub_dir);
  } else if (config.test_generator == "external") {
    gen = config.generator_command.empty()
              ? std::make_unique<toolchain::ExternalTestGenerator>()
              : std::make_unique<toolchain::ExternalTestGenerator>(config.generator_command);
  } else if (config.test_generator != "none") {
    throw ConfigError("unknown test generator '" + config.test_generator + "'");
  }
  if (gen && !config.layout.test_roots.empty()) gen->test_root = config.layout.test_roots.front();
  return gen;
}

void reset_journal(const fs::path& journal_root) {
  if (fs::exists(journal_root)) {
    if (!fs::is_directory(journal_root)) {
      throw ConfigError("journal path is not a directory: " + journal_root.string());
    }
    if (!fs::is_empty(journal_root) && !fs::exists(journal_root / kManifestFile)) {
      throw ConfigError("refusing to clear " + journal_root.string() +
                        ": it does not look like a journal");
    }
    fs::remove_all(journal_root);
  }
  fs::create_directories(journal_root);
}

void check_baseline(const fs::path& workspace, const toolchain::BuildAdapter& adapter) {
  auto baseline = toolchain::compile_project(workspace, adapter);
  if (baseline.status != toolchain::BuildStatus::kSuccess) {
    std::string first = baseline.errors().empty() ? "" : ": " + render(baseline.errors().front());
    throw BaselineFailure("project does not compile" + first);
  }
  auto tests = toolchain::run_tests(workspace, adapter);
  if (!tests.all_passed()) {
    std::string first = tests.failures.empty() ? "" : ": " + tests.failures.front().test_id;
    throw BaselineFailure(fmt::format("{} of {} tests fail before refactoring{}", tests.failed,
                                      tests.total, first));
  }
}

ProjectReport run_project(const fs::path& workspace, const EngineConfig& config,
                          llm::Backend& backend, const fs::path& journal_root) {
  config.validate();
  util::DirectoryLock lock(workspace / ".refagent");
  auto adapter = toolchain::detect_adapter(workspace);
  auto generator = make_test_generator(config);

  check_baseline(workspace, *adapter);

  auto model = source::load_design_model(workspace, config.layout);
  std::vector<std::string> classes = model.main_top_level_types();
  if (!config.only_classes.empty()) {
    std::set<std::string> available(classes.begin(), classes.end());
    for (const auto& c : config.only_classes) {
      if (!available.count(c)) throw UnknownType(c);
    }
    classes = config.only_classes;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  }

  reset_journal(journal_root);
  ProjectReport report;
  report.seed = config.seed;
  report.order = seeded_permutation(classes, config.seed);
  for (const char* v : {"COMMITTED", "REVERTED", "SKIPPED"}) report.tallies[v] = 0;
  const std::string started = util::utc_timestamp();
  report.analysis_before = analyze_workspace(workspace, config);
  util::write_file(journal_root / kAnalysisBeforeFile, report.analysis_before.dump(2) + "\n");

  SessionTools tools{backend, *adapter, generator.get()};
  for (const auto& fqn : report.order) {
    SessionVerdict v = run_class_session(workspace, fqn, config, tools, journal_root);
    ++report.tallies[to_string(v.verdict)];
    report.sessions.push_back(std::move(v));
  }

  report.analysis_after = analyze_workspace(workspace, config);
  util::write_file(journal_root / kAnalysisAfterFile, report.analysis_after.dump(2) + "\n");
  nlohmann::json manifest = report.to_json();
  manifest["config"] = config.to_json();
  manifest["adapter"] = adapter->name();
  manifest["started"] = started;
  manifest["finished"] = util::utc_timestamp();
  util::write_file(journal_root / kManifestFile, manifest.dump(2) + "\n");
  return report;
}

}  // namespace refagent::orchestrator
