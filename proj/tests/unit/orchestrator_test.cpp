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

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "refagent/depgraph/graph.h"
#include "refagent/error.h"
#include "refagent/llm/backends.h"
#include "refagent/llm/tokens.h"
#include "refagent/orchestrator/agents.h"
#include "refagent/orchestrator/diff.h"
#include "refagent/orchestrator/project.h"
#include "refagent/orchestrator/prompts.h"
#include "refagent/orchestrator/session.h"
#include "refagent/source/design_model.h"
#include "refagent/util/files.h"
#include "support/workspace.h"

namespace refagent::orchestrator {
namespace {

namespace fs = std::filesystem;
using refagent::testing::fixture;
using refagent::testing::TempWorkspace;

EngineConfig scripted_config(const std::string& playbook) {
  EngineConfig c;
  c.backend.kind = llm::BackendKind::kScripted;
  c.backend.playbook_path = fixture("playbooks/" + playbook + ".json");
  return c;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(util::read_file(p)); }

// ---------------------------------------------------------------- diff

TEST(Diff, IdenticalTextsGiveEmptyDiff) {
  EXPECT_EQ(unified_diff("a\nb\n", "a\nb\n", "X.java"), "");
}

TEST(Diff, SingleLineChange) {
  std::string d = unified_diff("a\nb\nc\n", "a\nB\nc\n", "X.java");
  EXPECT_EQ(d,
            "--- a/X.java\n+++ b/X.java\n@@ -1,3 +1,3 @@\n a\n-b\n+B\n c\n");
}

TEST(Diff, MissingFinalNewlineIsMarked) {
  std::string d = unified_diff("a\n", "a", "X.java");
  EXPECT_NE(d.find("\\ No newline at end of file"), std::string::npos);
  EXPECT_EQ(apply_unified_diff("a\n", d), "a");
}

TEST(Diff, RoundTripProperty) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> pool = {"int x;", "}", "", "return y;", "class A {", "// c"};
  for (int trial = 0; trial < 300; ++trial) {
    auto make = [&] {
      std::string s;
      int n = static_cast<int>(rng() % 15);
      for (int i = 0; i < n; ++i) s += pool[rng() % pool.size()] + "\n";
      if (!s.empty() && rng() % 4 == 0) s.pop_back();
      return s;
    };
    std::string before = make();
    std::string after = before;
    // Mutate a copy line-wise so the two texts share structure.
    if (rng() % 3) {
      after = make() + before.substr(0, before.size() / 2) + make();
    }
    std::string d = unified_diff(before, after, "T.java", static_cast<int>(rng() % 4));
    ASSERT_EQ(apply_unified_diff(before, d), after) << "trial " << trial << "\n" << d;
  }
}

// --------------------------------------------------------- permutation

TEST(Permutation, IsDeterministicPermutation) {
  std::vector<std::string> items = {"a", "b", "c", "d", "e", "f"};
  auto p1 = seeded_permutation(items, 0);
  auto p2 = seeded_permutation(items, 0);
  EXPECT_EQ(p1, p2);
  std::multiset<std::string> a(items.begin(), items.end()), b(p1.begin(), p1.end());
  EXPECT_EQ(a, b);
  std::set<std::vector<std::string>> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) seen.insert(seeded_permutation(items, seed));
  EXPECT_GT(seen.size(), 10u);
}

// -------------------------------------------------------- summarizing

TEST(Summarize, SameFileGroupsLines) {
  std::vector<toolchain::Diagnostic> d = {
      {"src/A.java", 12, 3, toolchain::Severity::kError, "';' expected"},
      {"src/A.java", 4, 1, toolchain::Severity::kError, "cannot find symbol: class Foo"}};
  EXPECT_EQ(summarize_errors(d, 1024),
            "src/A.java:\n  line 4: cannot find symbol: class Foo\n  line 12: ';' expected\n");
}

TEST(Summarize, DuplicatesCollapseWithCount) {
  std::vector<toolchain::Diagnostic> d(40, {"B.java", 7, 1, toolchain::Severity::kError, "boom"});
  EXPECT_EQ(summarize_errors(d, 1024), "B.java:\n  line 7: boom (x40)\n");
}

TEST(Summarize, WarningsOnlyWhenNoErrors) {
  std::vector<toolchain::Diagnostic> d = {
      {"A.java", 1, 1, toolchain::Severity::kWarning, "unchecked"},
      {"A.java", 2, 1, toolchain::Severity::kError, "bad"}};
  EXPECT_EQ(summarize_errors(d, 1024), "A.java:\n  line 2: bad\n");
}

TEST(Summarize, TokenBudgetTruncates) {
  std::vector<toolchain::Diagnostic> d;
  for (int i = 1; i <= 200; ++i) {
    d.push_back({"A.java", i, 1, toolchain::Severity::kError, "cannot find symbol: variable v" +
                                                                  std::to_string(i)});
  }
  std::string s = summarize_errors(d, 256);
  EXPECT_LE(llm::estimate_tokens(s), 300);
  EXPECT_NE(s.find("more lines omitted"), std::string::npos);
}

TEST(Summarize, ScriptedSummaryIsAppended) {
  auto model = source::load_design_model(fixture("bank"));
  auto graph = depgraph::extract_dependencies(model);
  llm::ScriptedBackend backend(nlohmann::json::parse(R"([
    {"agent": "compiler", "phase": "summarize", "text": "A semicolon is missing."}])"));
  llm::Transcript transcript;
  EngineConfig config;
  config.llm_summary = true;
  AgentEnv env{backend, transcript, config, model, graph};
  std::vector<toolchain::Diagnostic> d = {{"A.java", 3, 9, toolchain::Severity::kError, "';' expected"}};
  std::string digest = summarize_errors(d, 1024);
  std::string s = summarize_errors(d, 1024, &env, 1, "bank.Account");
  EXPECT_EQ(s, digest + "\nSummary:\nA semicolon is missing.\n");
  EXPECT_EQ(transcript.size(), 1u);
}

// ------------------------------------------------------------ prompts

std::string render_prompt(const std::vector<llm::ChatMessage>& messages,
                          const std::vector<llm::ToolSpec>& tools) {
  std::string out;
  for (const auto& m : messages) out += "=== " + m.role + "\n" + m.content + "\n";
  out += "=== tools\n";
  for (const auto& t : tools) out += t.name + "\n";
  return out;
}

std::vector<std::string> section_titles(const std::string& user) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = user.find("## ", pos)) != std::string::npos) {
    if (pos == 0 || user[pos - 1] == '\n') {
      auto end = user.find('\n', pos);
      std::string title = user.substr(pos, end - pos);
      if (title.rfind(kTargetSection, 0) == 0) title = kTargetSection;
      out.push_back(title);
    }
    pos += 3;
  }
  return out;
}

class PlannerPrompt : public ::testing::Test {
 protected:
  void SetUp() override {
    model_.emplace(source::load_design_model(fixture("bank")));
    graph_ = depgraph::extract_dependencies(*model_);
    ctx_ = make_class_context(*model_, graph_, "bank.Account", 4096);
  }
  std::string prompt(const Ablation& a) {
    return render_prompt(planner_messages(ctx_, a), planner_tools(a));
  }
  void check_golden(const std::string& name, const std::string& text) {
    fs::path path = fixture("prompts/" + name + ".txt");
    if (std::getenv("REFAGENT_UPDATE_GOLDEN")) util::write_file(path, text);
    EXPECT_EQ(text, util::read_file(path)) << "golden " << name;
  }
  std::optional<source::DesignModel> model_;
  depgraph::DependencyGraph graph_;
  ClassContext ctx_;
};

TEST_F(PlannerPrompt, FullPromptMatchesGolden) {
  std::string full = prompt({});
  check_golden("planner_full", full);
  auto titles = section_titles(planner_messages(ctx_, {})[1].content);
  EXPECT_EQ(titles, (std::vector<std::string>{kTargetSection, kDependencySection,
                                              kDependentsSection, kMetricsSection,
                                              kFormatSection}));
}

TEST_F(PlannerPrompt, EachAblationDropsExactlyItsSection) {
  struct Case {
    std::string name;
    Ablation ablation;
    std::string section;
    std::string tool;
  };
  std::vector<Case> cases = {{"planner_no_context", {false, true, true}, kMetricsSection, "code_metrics"},
                             {"planner_no_depgraph", {true, false, true}, kDependencySection, "dependency_graph"},
                             {"planner_no_codesearch", {true, true, false}, kDependentsSection, "code_search"}};
  auto full_titles = section_titles(planner_messages(ctx_, {})[1].content);
  auto full_tools = planner_tools({});
  for (const auto& c : cases) {
    check_golden(c.name, prompt(c.ablation));
    auto messages = planner_messages(ctx_, c.ablation);
    auto titles = section_titles(messages[1].content);
    auto expected = full_titles;
    expected.erase(std::find(expected.begin(), expected.end(), c.section));
    EXPECT_EQ(titles, expected) << c.name;
    auto tools = planner_tools(c.ablation);
    EXPECT_EQ(tools.size(), full_tools.size() - 1) << c.name;
    for (const auto& t : tools) EXPECT_NE(t.name, c.tool) << c.name;
    EXPECT_EQ(messages[0].content, planner_messages(ctx_, {})[0].content);
  }
}

TEST_F(PlannerPrompt, GeneratorRestatesPlanInEveryVariant) {
  llm::RefactoringPlan plan{"bank.Account",
                            {{llm::RegionKind::kMethod, "deposit", source::LineRange{21, 27},
                              "Extract Method", "Pull out the amount check."}}};
  for (auto kind : {GenerationKind::kInitial, GenerationKind::kCompileFix, GenerationKind::kTestFix}) {
    GenerationRequest req{kind, "A.java:\n  line 3: ';' expected\n", "class A {}"};
    auto m = generator_messages(ctx_, plan, req, {});
    EXPECT_NE(m[1].content.find("Extract Method on method `deposit` (lines 21-27)"),
              std::string::npos);
    if (kind == GenerationKind::kCompileFix) {
      EXPECT_NE(m[1].content.find("line 3: ';' expected"), std::string::npos);
    }
  }
}

// ------------------------------------------------------------ planner

class Planner : public ::testing::Test {
 protected:
  void SetUp() override {
    model_.emplace(source::load_design_model(fixture("bank")));
    graph_ = depgraph::extract_dependencies(*model_);
    ctx_ = make_class_context(*model_, graph_, "bank.Account", 4096);
  }
  PlanResult plan(const std::string& playbook) {
    backend_ = std::make_unique<llm::ScriptedBackend>(nlohmann::json::parse(playbook));
    AgentEnv env{*backend_, transcript_, config_, *model_, graph_};
    return plan_refactoring(env, ctx_);
  }
  static std::string fenced(const std::string& json) { return "```json\n" + json + "\n```"; }
  std::optional<source::DesignModel> model_;
  depgraph::DependencyGraph graph_;
  ClassContext ctx_;
  EngineConfig config_;
  llm::Transcript transcript_;
  std::unique_ptr<llm::ScriptedBackend> backend_;
};

TEST_F(Planner, TwoEntryPlan) {
  std::string entries = R"([
    {"region_kind": "method", "identifier": "deposit", "line_range": [21, 27],
     "refactoring_type": "Extract Method", "instruction": "a"},
    {"region_kind": "field", "identifier": "operations", "line_range": null,
     "refactoring_type": "Rename Field", "instruction": "b"}])";
  auto r = plan(nlohmann::json::array({{{"agent", "planner"}, {"phase", "plan"},
                                        {"text", fenced(entries)}}}).dump());
  ASSERT_TRUE(r.plan);
  EXPECT_EQ(r.plan->entries.size(), 2u);
  EXPECT_EQ(r.attempts, 1);
  EXPECT_TRUE(r.dropped.empty());
}

TEST_F(Planner, UnknownMethodIsDroppedWithWarning) {
  std::string entries = R"([
    {"region_kind": "method", "identifier": "deposit", "refactoring_type": "Extract Method", "instruction": "a"},
    {"region_kind": "method", "identifier": "audit", "refactoring_type": "Inline Method", "instruction": "b"}])";
  auto r = plan(nlohmann::json::array({{{"agent", "planner"}, {"phase", "plan"},
                                        {"text", fenced(entries)}}}).dump());
  ASSERT_TRUE(r.plan);
  ASSERT_EQ(r.plan->entries.size(), 1u);
  EXPECT_EQ(r.plan->entries[0].identifier, "deposit");
  ASSERT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped[0].identifier, "audit");
  EXPECT_FALSE(r.warnings.empty());
}

TEST_F(Planner, OtherClassEntriesAreAdvisory) {
  std::string entries = R"([
    {"region_kind": "method", "identifier": "deposit", "refactoring_type": "Extract Method", "instruction": "a"},
    {"region_kind": "class", "identifier": "bank.Ledger", "refactoring_type": "Move Method", "instruction": "b"}])";
  auto r = plan(nlohmann::json::array({{{"agent", "planner"}, {"phase", "plan"},
                                        {"text", fenced(entries)}}}).dump());
  ASSERT_TRUE(r.plan);
  EXPECT_EQ(r.plan->entries.size(), 1u);
  ASSERT_EQ(r.advisory.size(), 1u);
  EXPECT_EQ(r.advisory[0].identifier, "bank.Ledger");
}

TEST_F(Planner, ThreeUnparseableRepliesSkip) {
  auto r = plan(R"([{"agent": "planner", "phase": "plan", "text": "no idea", "repeat": true}])");
  EXPECT_FALSE(r.plan);
  EXPECT_EQ(r.attempts, 3);
  EXPECT_EQ(transcript_.size(), 3u);
  // Re-prompts carry the parse error back to the planner.
  const auto& last = transcript_.entries().back()["request"]["messages"];
  EXPECT_NE(last.back()["content"].get<std::string>().find("could not be used"), std::string::npos);
}

TEST_F(Planner, EmptyPlanSkips) {
  auto r = plan(nlohmann::json::array({{{"agent", "planner"}, {"phase", "plan"},
                                        {"text", fenced("[]")}}}).dump());
  EXPECT_FALSE(r.plan);
  EXPECT_EQ(r.skip_reason, "empty plan");
}

TEST_F(Planner, ToolCallsAreAnswered) {
  std::string entries = R"([{"region_kind": "method", "identifier": "withdraw",
    "refactoring_type": "Extract Method", "instruction": "a"}])";
  nlohmann::json book = nlohmann::json::array(
      {{{"agent", "planner"}, {"phase", "plan"}, {"text", ""},
        {"tool_calls", {{{"name", "code_search"}, {"arguments", R"({"fqn": "bank.Ledger"})"}}}}},
       {{"agent", "planner"}, {"phase", "plan"}, {"text", fenced(entries)}}});
  auto r = plan(book.dump());
  ASSERT_TRUE(r.plan);
  const auto& messages = transcript_.entries().back()["request"]["messages"];
  EXPECT_EQ(messages.back()["role"], "tool");
  EXPECT_NE(messages.back()["content"].get<std::string>().find("public class Ledger"),
            std::string::npos);
}

// ------------------------------------------------------------ sessions

struct SessionRun {
  SessionVerdict verdict;
  std::string before_digest;
  std::string after_digest;
};

SessionRun run_session(const TempWorkspace& ws, const std::string& fqn, EngineConfig config) {
  auto backend = llm::ScriptedBackend::load(config.backend.playbook_path);
  auto adapter = toolchain::detect_adapter(ws.project());
  auto generator = make_test_generator(config);
  SessionTools tools{*backend, *adapter, generator.get()};
  SessionRun r;
  r.before_digest = util::tree_digest(ws.project());
  r.verdict = run_class_session(ws.project(), fqn, config, tools, ws.journal());
  r.after_digest = util::tree_digest(ws.project());
  return r;
}

TEST(Session, CompileErrorFixedAtSecondAttempt) {
  TempWorkspace ws("bank");
  auto r = run_session(ws, "bank.Account", scripted_config("bank_e2e"));
  EXPECT_EQ(r.verdict.verdict, Phase::kCommitted) << r.verdict.reason;
  EXPECT_EQ(r.verdict.compile_attempts, 2);
  EXPECT_EQ(r.verdict.test_attempts, 1);
  fs::path dir = ws.journal() / "bank.Account";
  EXPECT_EQ(read_json(dir / attempt_file(1))["verdict"], "compile_fail");
  EXPECT_NE(read_json(dir / attempt_file(1))["error_summary"].get<std::string>().find("';' expected"),
            std::string::npos);
  EXPECT_EQ(read_json(dir / attempt_file(2))["kind"], "compile_fix");
  EXPECT_EQ(read_json(dir / attempt_file(2))["verdict"], "pass");
  for (const char* f : {kPlanFile, kDiffFile, kVerdictFile, kMetricsBeforeFile, kMetricsAfterFile,
                        kTranscriptFile}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_NE(r.before_digest, r.after_digest);
  // Journal self-consistency: the diff takes the original to the final candidate.
  std::string original = util::read_file(fixture("bank/src/main/java/bank/Account.java"));
  std::string final_source = read_json(dir / attempt_file(2))["candidate_source"];
  EXPECT_EQ(apply_unified_diff(original, util::read_file(dir / kDiffFile)), final_source);
  EXPECT_EQ(util::read_file(ws.project() / "src/main/java/bank/Account.java"), final_source);
}

TEST(Session, AlwaysBrokenCompileStopsAtCap) {
  TempWorkspace ws("bank");
  auto r = run_session(ws, "bank.Account", scripted_config("bank_compile_broken"));
  EXPECT_EQ(r.verdict.verdict, Phase::kReverted);
  EXPECT_EQ(r.verdict.compile_attempts, 20);
  EXPECT_EQ(r.verdict.test_attempts, 0);
  EXPECT_EQ(r.before_digest, r.after_digest);
  EXPECT_TRUE(fs::exists(ws.journal() / "bank.Account" / attempt_file(20)));
  EXPECT_FALSE(fs::exists(ws.journal() / "bank.Account" / attempt_file(21)));
  EXPECT_FALSE(fs::exists(ws.journal() / "bank.Account" / kDiffFile));
}

TEST(Session, SmallerCapIsHonoured) {
  TempWorkspace ws("bank");
  auto config = scripted_config("bank_compile_broken");
  config.max_compile_iters = 3;
  auto r = run_session(ws, "bank.Account", config);
  EXPECT_EQ(r.verdict.verdict, Phase::kReverted);
  EXPECT_EQ(r.verdict.compile_attempts, 3);
}

TEST(Session, NeverPassingTestsStopAtCap) {
  TempWorkspace ws("bank");
  auto r = run_session(ws, "bank.TransferService", scripted_config("bank_tests_failing"));
  EXPECT_EQ(r.verdict.verdict, Phase::kReverted);
  EXPECT_EQ(r.verdict.test_attempts, 20);
  EXPECT_EQ(r.verdict.compile_attempts, 20);
  EXPECT_EQ(r.before_digest, r.after_digest);
  EXPECT_EQ(r.verdict.tests_run, std::vector<std::string>{"bank.TransferServiceTest"});
  auto last = read_json(ws.journal() / "bank.TransferService" / attempt_file(20));
  EXPECT_EQ(last["kind"], "test_fix");
  EXPECT_EQ(last["verdict"], "test_fail");
  EXPECT_NE(last["error_summary"].get<std::string>().find("transferMovesMoneyAndRecordsIt"),
            std::string::npos);
}

TEST(Session, NoCodeBlockCountsAsAttempt) {
  TempWorkspace ws("bank");
  fs::path book = ws.scratch("book.json");
  auto e2e = read_json(fixture("playbooks/bank_e2e.json"));
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : e2e["entries"]) {
    if (e["class"] != "bank.Ledger") continue;
    if (e["agent"] == "generator") {
      entries.push_back({{"agent", "generator"}, {"phase", "initial"}, {"attempt", 1},
                         {"text", "I would extract a variable."}});
      auto fixed = e;
      fixed["attempt"] = 2;
      entries.push_back(fixed);
    } else {
      entries.push_back(e);
    }
  }
  util::write_file(book, nlohmann::json{{"entries", entries}}.dump());
  EngineConfig config;
  config.backend.playbook_path = book;
  auto r = run_session(ws, "bank.Ledger", config);
  EXPECT_EQ(r.verdict.verdict, Phase::kCommitted) << r.verdict.reason;
  EXPECT_EQ(r.verdict.compile_attempts, 2);
  auto first = read_json(ws.journal() / "bank.Ledger" / attempt_file(1));
  EXPECT_TRUE(first["candidate_source"].is_null());
  EXPECT_EQ(first["verdict"], "compile_fail");
}

TEST(Session, OverBudgetTargetIsSkipped) {
  TempWorkspace ws("bank");
  std::string big = "package bank;\n\npublic class Huge {\n";
  for (int i = 0; i < 200; ++i) {
    big += "    public int method" + std::to_string(i) + "(int a) { return a + " +
           std::to_string(i) + "; }\n";
  }
  big += "}\n";
  util::write_file(ws.project() / "src/main/java/bank/Huge.java", big);
  auto config = scripted_config("bank_e2e");
  config.token_budget = 1024;
  auto r = run_session(ws, "bank.Huge", config);
  EXPECT_EQ(r.verdict.verdict, Phase::kSkipped);
  EXPECT_EQ(r.before_digest, r.after_digest);
  EXPECT_TRUE(fs::exists(ws.journal() / "bank.Huge" / kVerdictFile));
}

TEST(Session, PlaybookWithoutPlanSkips) {
  TempWorkspace ws("bank");
  auto r = run_session(ws, "bank.Ledger", scripted_config("bank_compile_broken"));
  EXPECT_EQ(r.verdict.verdict, Phase::kSkipped);
  EXPECT_NE(r.verdict.reason.find("planner failed"), std::string::npos);
}

TEST(Session, StubGeneratedTestsJoinTheRunAndAreRemoved) {
  TempWorkspace ws("bank");
  auto config = scripted_config("bank_e2e");
  config.test_generator = "stub";
  config.stub_dir = fixture("stubs");
  auto r = run_session(ws, "bank.Ledger", config);
  EXPECT_EQ(r.verdict.verdict, Phase::kCommitted) << r.verdict.reason;
  ASSERT_EQ(r.verdict.generated_tests.size(), 1u);
  EXPECT_EQ(r.verdict.generated_tests[0], "bank.refagent_generated.LedgerGeneratedTest");
  // TransferServiceTest builds a Ledger, so it counts as related too.
  EXPECT_EQ(r.verdict.tests_run,
            (std::vector<std::string>{"bank.LedgerTest", "bank.TransferServiceTest",
                                      "bank.refagent_generated.LedgerGeneratedTest"}));
  EXPECT_FALSE(fs::exists(ws.project() / "src/test/java/bank/refagent_generated"));
}

TEST(Session, DryRunLeavesTreeUntouched) {
  TempWorkspace ws("bank");
  auto config = scripted_config("bank_e2e");
  config.dry_run = true;
  auto r = run_session(ws, "bank.Account", config);
  EXPECT_EQ(r.verdict.verdict, Phase::kSkipped);
  EXPECT_EQ(r.verdict.reason, "dry run");
  EXPECT_EQ(r.before_digest, r.after_digest);
  EXPECT_TRUE(read_json(ws.journal() / "bank.Account" / kPlanFile)["plan"].is_object());
}

// ------------------------------------------------------------ projects

TEST(Project, ScriptedRunVerdictsAndDeterminism) {
  std::map<std::string, std::string> journals[2];
  for (int run = 0; run < 2; ++run) {
    TempWorkspace ws("bank");
    auto config = scripted_config("bank_e2e");
    auto backend = llm::ScriptedBackend::load(config.backend.playbook_path);
    auto report = run_project(ws.project(), config, *backend, ws.journal());
    EXPECT_EQ(report.tallies.at("COMMITTED"), 2);
    EXPECT_EQ(report.tallies.at("REVERTED"), 1);
    EXPECT_EQ(report.tallies.at("SKIPPED"), 0);
    EXPECT_EQ(report.order, seeded_permutation(
                                {"bank.Account", "bank.Ledger", "bank.TransferService"}, 0));
    auto manifest = read_json(ws.journal() / kManifestFile);
    EXPECT_EQ(manifest["tallies"]["COMMITTED"], 2);
    for (const auto& s : report.sessions) {
      auto v = session_verdict_from_json(read_json(ws.journal() / s.fqn / kVerdictFile));
      EXPECT_EQ(v.verdict, s.verdict);
      EXPECT_LE(v.compile_attempts, 20);
      EXPECT_LE(v.test_attempts, 20);
    }
    journals[run] = refagent::testing::journal_contents(ws.journal());
  }
  EXPECT_EQ(journals[0], journals[1]);
}

TEST(Project, FailingBaselineStopsBeforeAnySession) {
  TempWorkspace ws("bank");
  fs::path test = ws.project() / "src/test/java/bank/LedgerTest.java";
  std::string text = util::read_file(test);
  text.replace(text.find("assertEquals(0, ledger.size());"), 31, "assertEquals(1, 2);");
  util::write_file(test, text);
  auto config = scripted_config("bank_e2e");
  auto backend = llm::ScriptedBackend::load(config.backend.playbook_path);
  EXPECT_THROW(run_project(ws.project(), config, *backend, ws.journal()), BaselineFailure);
  EXPECT_FALSE(fs::exists(ws.journal() / kManifestFile));
}

TEST(Project, JournalResetRefusesForeignDirectories) {
  TempWorkspace ws("");
  util::write_file(ws.journal() / "notes.txt", "keep me");
  EXPECT_THROW(reset_journal(ws.journal()), ConfigError);
  util::write_file(ws.journal() / kManifestFile, "{}");
  reset_journal(ws.journal());
  EXPECT_TRUE(fs::is_empty(ws.journal()));
}

}  // namespace
}  // namespace refagent::orchestrator
