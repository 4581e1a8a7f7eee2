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

#include "refagent/orchestrator/session.h"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "refagent/depgraph/graph.h"
#include "refagent/error.h"
#include "refagent/metrics/metrics.h"
#include "refagent/orchestrator/agents.h"
#include "refagent/orchestrator/diff.h"
#include "refagent/quality/qmood.h"
#include "refagent/smells/smells.h"
#include "refagent/toolchain/process.h"
#include "refagent/util/files.h"

namespace refagent::orchestrator {

namespace fs = std::filesystem;

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::kPlanning: return "PLANNING";
    case Phase::kGenerating: return "GENERATING";
    case Phase::kCompiling: return "COMPILING";
    case Phase::kTesting: return "TESTING";
    case Phase::kCommitted: return "COMMITTED";
    case Phase::kReverted: return "REVERTED";
    case Phase::kSkipped: return "SKIPPED";
  }
  return "SKIPPED";
}

Phase phase_from_string(const std::string& s) {
  for (Phase p : {Phase::kPlanning, Phase::kGenerating, Phase::kCompiling, Phase::kTesting,
                  Phase::kCommitted, Phase::kReverted, Phase::kSkipped}) {
    if (s == to_string(p)) return p;
  }
  throw Error("unknown session phase '" + s + "'");
}

bool is_terminal(Phase phase) {
  return phase == Phase::kCommitted || phase == Phase::kReverted || phase == Phase::kSkipped;
}

Snapshot Snapshot::take(const fs::path& workspace) {
  Snapshot s;
  for (const auto& [rel, digest] : util::file_digests(workspace)) {
    s.files_[rel] = util::read_file(workspace / rel);
  }
  s.digest_ = util::tree_digest(workspace);
  return s;
}

void Snapshot::restore(const fs::path& workspace) const {
  std::set<fs::path> touched_dirs;
  for (const auto& [rel, digest] : util::file_digests(workspace)) {
    auto it = files_.find(rel);
    if (it == files_.end()) {
      fs::remove(workspace / rel);
      touched_dirs.insert((workspace / rel).parent_path());
    } else if (util::sha256_hex(it->second) != digest) {
      util::write_file(workspace / rel, it->second);
    }
  }
  for (const auto& [rel, content] : files_) {
    if (!fs::exists(workspace / rel)) util::write_file(workspace / rel, content);
  }
  // Drop directories emptied by the removals, innermost first.
  const fs::path root = fs::absolute(workspace).lexically_normal();
  for (auto it = touched_dirs.rbegin(); it != touched_dirs.rend(); ++it) {
    for (fs::path dir = fs::absolute(*it).lexically_normal(); dir != root && dir.has_parent_path();
         dir = dir.parent_path()) {
      std::error_code ec;
      if (!fs::is_directory(dir, ec) || !fs::is_empty(dir, ec)) break;
      fs::remove(dir, ec);
    }
  }
}

const char* to_string(AttemptVerdict v) {
  switch (v) {
    case AttemptVerdict::kCompileFail: return "compile_fail";
    case AttemptVerdict::kTestFail: return "test_fail";
    case AttemptVerdict::kPass: return "pass";
  }
  return "compile_fail";
}

nlohmann::json to_json(const AttemptRecord& a) {
  nlohmann::json j = {{"attempt", a.index},
                      {"kind", to_string(a.kind)},
                      {"candidate_source", a.candidate_source ? nlohmann::json(*a.candidate_source)
                                                              : nlohmann::json(nullptr)},
                      {"verdict", to_string(a.verdict)},
                      {"error_summary", a.error_summary},
                      {"compile", nullptr},
                      {"tests", nullptr}};
  if (a.compile) j["compile"] = toolchain::to_json(*a.compile);
  if (a.tests) j["tests"] = toolchain::to_json(*a.tests);
  return j;
}

nlohmann::json to_json(const SessionVerdict& v) {
  return {{"class", v.fqn},
          {"verdict", to_string(v.verdict)},
          {"reason", v.reason},
          {"compile_attempts", v.compile_attempts},
          {"test_attempts", v.test_attempts},
          {"phase_history", v.phase_history},
          {"target_file", v.target_file},
          {"snapshot_digest", v.snapshot_digest},
          {"final_digest", v.final_digest},
          {"tests_run", v.tests_run},
          {"generated_tests", v.generated_tests},
          {"warnings", v.warnings}};
}

SessionVerdict session_verdict_from_json(const nlohmann::json& j) {
  SessionVerdict v;
  v.fqn = j.at("class").get<std::string>();
  v.verdict = phase_from_string(j.at("verdict").get<std::string>());
  if (!is_terminal(v.verdict)) throw Error("verdict for " + v.fqn + " is not terminal");
  v.reason = j.value("reason", "");
  v.compile_attempts = j.value("compile_attempts", 0);
  v.test_attempts = j.value("test_attempts", 0);
  v.phase_history = j.value("phase_history", std::vector<std::string>{});
  v.target_file = j.value("target_file", "");
  v.snapshot_digest = j.value("snapshot_digest", "");
  v.final_digest = j.value("final_digest", "");
  v.tests_run = j.value("tests_run", std::vector<std::string>{});
  v.generated_tests = j.value("generated_tests", std::vector<std::string>{});
  v.warnings = j.value("warnings", std::vector<std::string>{});
  return v;
}

std::string attempt_file(int index) { return fmt::format("attempt_{}.json", index); }

nlohmann::json snapshot_metrics(const source::DesignModel& model,
                                const depgraph::DependencyGraph& graph, const std::string& fqn,
                                const EngineConfig& config) {
  auto design = metrics::compute_design_metrics(model, graph);
  nlohmann::json cls = nullptr;
  if (model.contains(fqn)) cls = metrics::to_json(metrics::compute_class_metrics(model, graph, fqn));
  return {{"class", cls},
          {"design", metrics::to_json(design.aggregate)},
          {"qmood", quality::qmood_attributes(design.aggregate, config.coefficients()).to_json()},
          {"smells", smells::to_json(smells::detect_smells(model, graph, config.thresholds))}};
}

namespace {

void write_json(const fs::path& path, const nlohmann::json& j) {
  util::write_file(path, j.dump(2) + "\n");
}

class Session {
 public:
  Session(const fs::path& workspace, const std::string& fqn, const EngineConfig& config,
          const SessionTools& tools, const fs::path& journal_root)
      : ws_(workspace), config_(config), tools_(tools), dir_(journal_root / fqn) {
    v_.fqn = fqn;
  }

  SessionVerdict run();

 private:
  void enter(Phase p) { v_.phase_history.push_back(to_string(p)); }
  SessionVerdict finish(Phase verdict, std::string reason);
  void generate_tests();
  void refactor(const AgentEnv& env, const ClassContext& ctx, const llm::RefactoringPlan& plan);
  void commit();

  fs::path ws_;
  const EngineConfig& config_;
  const SessionTools& tools_;
  fs::path dir_;
  SessionVerdict v_;
  llm::Transcript transcript_;
  std::optional<Snapshot> snapshot_;
  std::optional<source::DesignModel> model_;
  depgraph::DependencyGraph graph_;
  nlohmann::json metrics_before_;
  std::vector<std::string> generated_classes_;
  bool done_ = false;
};

SessionVerdict Session::finish(Phase verdict, std::string reason) {
  enter(verdict);
  v_.verdict = verdict;
  v_.reason = std::move(reason);
  if (verdict != Phase::kCommitted && snapshot_) {
    snapshot_->restore(ws_);
    v_.final_digest = util::tree_digest(ws_);
    if (v_.final_digest != v_.snapshot_digest) {
      throw Error("workspace differs from its snapshot after reverting " + v_.fqn);
    }
  }
  if (verdict != Phase::kCommitted) {
    write_json(dir_ / kMetricsAfterFile, metrics_before_);
  }
  write_json(dir_ / kTranscriptFile, transcript_.entries());
  write_json(dir_ / kVerdictFile, to_json(v_));
  done_ = true;
  return v_;
}

void Session::generate_tests() {
  if (!tools_.generator) return;
  try {
    auto files = tools_.generator->generate(v_.fqn, ws_);
    generated_classes_ =
        toolchain::generated_test_classes(files, ws_ / tools_.generator->test_root);
    v_.generated_tests = generated_classes_;
  } catch (const GeneratorUnavailable& e) {
    v_.warnings.push_back(std::string("test generation unavailable: ") + e.what());
  } catch (const ToolError& e) {
    v_.warnings.push_back(std::string("test generation failed: ") + e.what());
  }
}

void Session::refactor(const AgentEnv& env, const ClassContext& ctx,
                       const llm::RefactoringPlan& plan) {
  const fs::path target = ws_ / v_.target_file;

  // Tests exercising the target: related tests plus anything generated.
  std::set<std::string> tests = depgraph::related_tests(graph_, *model_, v_.fqn);
  tests.insert(generated_classes_.begin(), generated_classes_.end());
  v_.tests_run.assign(tests.begin(), tests.end());
  std::optional<std::vector<std::string>> filter;
  if (!v_.tests_run.empty()) filter = v_.tests_run;

  GenerationRequest request;
  int calls = 0;
  while (true) {
    if (v_.compile_attempts >= config_.max_compile_iters) {
      finish(Phase::kReverted,
             fmt::format("compile budget exhausted after {} attempts", v_.compile_attempts));
      return;
    }
    enter(Phase::kGenerating);
    AttemptRecord rec;
    rec.index = ++calls;
    rec.kind = request.kind;
    Candidate candidate = generate_candidate(env, ctx, plan, request, rec.index);
    rec.candidate_source = candidate.source;
    ++v_.compile_attempts;

    if (!candidate.source) {
      rec.verdict = AttemptVerdict::kCompileFail;
      rec.error_summary = "reply contained no code block";
      write_json(dir_ / attempt_file(rec.index), to_json(rec));
      if (request.feedback.find("no code block") == std::string::npos) {
        request.feedback += (request.feedback.empty() ? "" : "\n") +
                            std::string("Your previous reply had no code block; reply with the "
                                        "complete class in one ```java block.");
      }
      continue;
    }

    util::write_file(target, *candidate.source);
    enter(Phase::kCompiling);
    rec.compile = toolchain::compile_project(ws_, tools_.adapter);
    if (rec.compile->status != toolchain::BuildStatus::kSuccess) {
      rec.verdict = AttemptVerdict::kCompileFail;
      rec.error_summary = summarize_errors(rec.compile->errors(), config_.summary_token_budget,
                                           &env, rec.index, v_.fqn);
      write_json(dir_ / attempt_file(rec.index), to_json(rec));
      request = {GenerationKind::kCompileFix, rec.error_summary, *candidate.source};
      continue;
    }

    enter(Phase::kTesting);
    ++v_.test_attempts;
    rec.tests = toolchain::run_tests(ws_, tools_.adapter, filter);
    if (rec.tests->all_passed()) {
      rec.verdict = AttemptVerdict::kPass;
      write_json(dir_ / attempt_file(rec.index), to_json(rec));
      commit();
      return;
    }
    rec.verdict = AttemptVerdict::kTestFail;
    rec.error_summary = summarize_test_failures(*rec.tests, config_.summary_token_budget);
    write_json(dir_ / attempt_file(rec.index), to_json(rec));
    if (v_.test_attempts >= config_.max_test_iters) {
      finish(Phase::kReverted,
             fmt::format("test budget exhausted after {} attempts", v_.test_attempts));
      return;
    }
    request = {GenerationKind::kTestFix, rec.error_summary, *candidate.source};
  }
}

void Session::commit() {
  if (tools_.generator) toolchain::remove_generated_tests(ws_, tools_.generator->test_root);
  const std::string before = snapshot_->files().at(v_.target_file);
  const std::string after = util::read_file(ws_ / v_.target_file);
  util::write_file(dir_ / kDiffFile, unified_diff(before, after, v_.target_file));

  try {
    auto model = source::load_design_model(ws_, config_.layout);
    auto graph = depgraph::extract_dependencies(model);
    write_json(dir_ / kMetricsAfterFile, snapshot_metrics(model, graph, v_.fqn, config_));
  } catch (const Error& e) {
    v_.warnings.push_back(std::string("metrics after commit unavailable: ") + e.what());
    write_json(dir_ / kMetricsAfterFile, nullptr);
  }

  if (!config_.vcs_hook.empty()) {
    std::vector<std::string> argv;
    for (std::string a : config_.vcs_hook) {
      for (std::size_t p; (p = a.find("${CLASS}")) != std::string::npos;) a.replace(p, 8, v_.fqn);
      argv.push_back(std::move(a));
    }
    try {
      auto r = toolchain::run_command(argv, ws_, toolchain::kDefaultTimeoutSeconds);
      if (r.exit_code != 0) {
        v_.warnings.push_back(fmt::format("vcs hook exited with {}", r.exit_code));
      }
    } catch (const ToolError& e) {
      v_.warnings.push_back(std::string("vcs hook failed: ") + e.what());
    }
  }
  v_.final_digest = util::tree_digest(ws_);
  finish(Phase::kCommitted, "all tests pass");
}

SessionVerdict Session::run() {
  std::error_code ec;
  fs::remove_all(dir_, ec);
  fs::create_directories(dir_);
  enter(Phase::kPlanning);

  model_ = source::load_design_model(ws_, config_.layout);
  graph_ = depgraph::extract_dependencies(*model_);
  if (!model_->contains(v_.fqn) || model_->is_test(v_.fqn)) {
    return finish(Phase::kSkipped, "not a main class of the project");
  }
  v_.target_file = model_->unit_of(v_.fqn).path;
  snapshot_ = Snapshot::take(ws_);
  v_.snapshot_digest = snapshot_->digest();
  metrics_before_ = snapshot_metrics(*model_, graph_, v_.fqn, config_);
  write_json(dir_ / kMetricsBeforeFile, metrics_before_);

  ClassContext ctx;
  try {
    ctx = make_class_context(*model_, graph_, v_.fqn, config_.token_budget);
  } catch (const TargetOverBudget& e) {
    return finish(Phase::kSkipped, e.what());
  }

  AgentEnv env{tools_.backend, transcript_, config_, *model_, graph_};
  PlanResult planned;
  try {
    planned = plan_refactoring(env, ctx);
  } catch (const Error& e) {
    return finish(Phase::kSkipped, std::string("planner failed: ") + e.what());
  }
  v_.warnings.insert(v_.warnings.end(), planned.warnings.begin(), planned.warnings.end());
  nlohmann::json dropped = nlohmann::json::array(), advisory = nlohmann::json::array();
  for (const auto& e : planned.dropped) dropped.push_back(llm::to_json(e));
  for (const auto& e : planned.advisory) advisory.push_back(llm::to_json(e));
  write_json(dir_ / kPlanFile,
             {{"target", v_.fqn},
              {"attempts", planned.attempts},
              {"plan", planned.plan ? llm::to_json(*planned.plan) : nlohmann::json(nullptr)},
              {"dropped", dropped},
              {"advisory", advisory},
              {"skip_reason", planned.skip_reason}});
  if (!planned.plan) return finish(Phase::kSkipped, planned.skip_reason);
  if (config_.dry_run) return finish(Phase::kSkipped, "dry run");

  generate_tests();
  try {
    refactor(env, ctx, *planned.plan);
  } catch (const Error& e) {
    if (!done_) finish(Phase::kReverted, e.what());
  }
  return v_;
}

}  // namespace

SessionVerdict run_class_session(const fs::path& workspace, const std::string& fqn,
                                 const EngineConfig& config, const SessionTools& tools,
                                 const fs::path& journal_root) {
  Session session(workspace, fqn, config, tools, journal_root);
  return session.run();
}

}  // namespace refagent::orchestrator
