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

#include "refagent/evaluation/passk.h"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "refagent/depgraph/graph.h"
#include "refagent/error.h"
#include "refagent/evaluation/stats.h"
#include "refagent/llm/extract.h"
#include "refagent/orchestrator/project.h"
#include "refagent/orchestrator/session.h"
#include "refagent/source/design_model.h"
#include "refagent/toolchain/build.h"
#include "refagent/util/files.h"

namespace refagent::evaluation {

namespace fs = std::filesystem;

namespace {

constexpr const char* kOneShotSystem =
    "You are a Java developer improving the design quality of existing code. Preserve the "
    "observable behavior and the public API of the class.";

llm::Request oneshot_request(const std::string& fqn, const std::string& source, int attempt,
                             double temperature) {
  llm::Request r;
  r.messages.push_back({"system", kOneShotSystem});
  r.messages.push_back(
      {"user", fmt::format("Refactor the class {} to remove code smells and improve its "
                           "structure. Reply with the complete refactored class in one ```java "
                           "block.\n\n```java\n{}\n```",
                           fqn, source)});
  r.temperature = temperature;
  r.key = {"baseline", "oneshot", attempt, fqn};
  return r;
}

}  // namespace

nlohmann::json to_json(const std::vector<PassAtKResult>& results, std::size_t k) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& r : results) {
    classes.push_back({{"class", r.fqn}, {"verdicts", r.verdicts}, {"pass", r.pass}});
  }
  return {{"k", k}, {"classes", classes}};
}

std::vector<PassAtKResult> pass_at_k_from_json(const nlohmann::json& j, std::size_t* k) {
  try {
    if (k) *k = j.at("k").get<std::size_t>();
    std::vector<PassAtKResult> out;
    for (const auto& c : j.at("classes")) {
      out.push_back({c.at("class").get<std::string>(), c.at("verdicts").get<std::vector<bool>>(),
                     c.at("pass").get<bool>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw IncompleteJournal(std::string("malformed pass@k record: ") + e.what());
  }
}

std::vector<PassAtKResult> run_single_agent_baseline(const fs::path& workspace,
                                                     const orchestrator::EngineConfig& config,
                                                     llm::Backend& backend, std::size_t k,
                                                     const fs::path& journal_root) {
  if (k == 0) throw ConfigError("k must be at least 1");
  config.validate();
  util::DirectoryLock lock(workspace / ".refagent");
  auto adapter = toolchain::detect_adapter(workspace);
  orchestrator::check_baseline(workspace, *adapter);

  auto model = source::load_design_model(workspace, config.layout);
  auto graph = depgraph::extract_dependencies(model);
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

  const auto snapshot = orchestrator::Snapshot::take(workspace);
  const std::string digest = util::tree_digest(workspace);
  std::vector<PassAtKResult> results;
  llm::Transcript transcript;
  for (const auto& fqn : orchestrator::seeded_permutation(classes, config.seed)) {
    const std::string rel = model.unit_of(fqn).path;
    const std::string original = snapshot.files().at(rel);
    std::set<std::string> related = depgraph::related_tests(graph, model, fqn);
    std::optional<std::vector<std::string>> filter;
    if (!related.empty()) filter = std::vector<std::string>(related.begin(), related.end());

    PassAtKResult result;
    result.fqn = fqn;
    for (std::size_t i = 1; i <= k; ++i) {
      bool ok = false;
      try {
        auto request = oneshot_request(fqn, original, static_cast<int>(i), config.backend.temperature);
        auto response = llm::complete(request, backend, config.backend.context_window);
        transcript.append(request, response);
        util::write_file(workspace / rel, llm::extract_code_block(response.text) + "\n");
        auto build = toolchain::compile_project(workspace, *adapter);
        if (build.status == toolchain::BuildStatus::kSuccess) {
          ok = toolchain::run_tests(workspace, *adapter, filter).all_passed();
        }
      } catch (const NoCodeBlock&) {
      } catch (const ToolError&) {
      }
      snapshot.restore(workspace);
      result.verdicts.push_back(ok);
    }
    result.pass = pass_at_k(result.verdicts, k);
    results.push_back(std::move(result));
  }
  if (util::tree_digest(workspace) != digest) {
    throw Error("workspace differs from its snapshot after the baseline run");
  }

  util::write_file(journal_root / kPassAtKFile, to_json(results, k).dump(2) + "\n");
  util::write_file(journal_root / "passk_transcript.json", transcript.entries().dump(2) + "\n");
  return results;
}

}  // namespace refagent::evaluation
