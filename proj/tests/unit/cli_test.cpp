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

#include <sstream>

#include "refagent/cli/cli.h"
#include "refagent/cli/config_file.h"
#include "refagent/error.h"
#include "refagent/util/files.h"
#include "support/workspace.h"

namespace refagent::cli {
namespace {

namespace fs = std::filesystem;
using refagent::testing::fixture;
using refagent::testing::TempWorkspace;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string playbook(const std::string& name) { return fixture("playbooks/" + name + ".json").string(); }

// ---------------------------------------------------------------- usage

TEST(Cli, UnknownSubcommandIsUsageError) {
  auto r = invoke({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("frobnicate"), std::string::npos);
  EXPECT_EQ(invoke({"evaluate", "bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
}

TEST(Cli, UnknownFlagIsNamed) {
  TempWorkspace ws("tiny");
  auto r = invoke({"analyze", ws.project().string(), "--bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);
}

TEST(Cli, InvalidFlagValuesAreUsageErrors) {
  auto r = invoke({"evaluate", "align", "--ours", fixture("miner/bank_refactorings.json").string(), "--theirs",
                   fixture("miner/bank_refactorings.json").string(), "--scenario", "3"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--scenario"), std::string::npos);

  auto missing = invoke({"evaluate", "align", "--theirs", fixture("miner/bank_refactorings.json").string(),
                         "--scenario", "2"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("--ours"), std::string::npos);

  TempWorkspace ws("bank");
  auto backend = invoke({"refactor", ws.project().string(), "--backend", "carrier-pigeon"});
  EXPECT_EQ(backend.code, kExitUsage);
  EXPECT_NE(backend.err.find("--backend"), std::string::npos);

  auto rule = invoke({"report", ws.project().string(), "--out", ws.scratch("r").string(), "--range-rule", "fuzzy"});
  EXPECT_EQ(rule.code, kExitUsage);
  EXPECT_NE(rule.err.find("--range-rule"), std::string::npos);
}

TEST(Cli, HelpAndVersionSucceed) {
  auto help = invoke({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("refactor"), std::string::npos);
  EXPECT_EQ(invoke({"--version"}).code, kExitOk);
  EXPECT_EQ(invoke({"refactor", "--help"}).code, kExitOk);
}

// ---------------------------------------------------------------- analyze / graph

TEST(Cli, AnalyzeTinyWritesMetricsCsv) {
  TempWorkspace ws("tiny");
  auto r = invoke({"analyze", ws.project().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const fs::path dir = ws.project() / ".refagent" / "analysis";
  const std::string csv = util::read_file(dir / "metrics.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "fqn,DCC,CAM,CIS,NOM,NOP,DAM,MOA,MFA,ANA,LCOM,LOC,max_cc");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_NE(csv.find("\ntiny.Circle,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "smells.csv"));
  EXPECT_TRUE(fs::exists(dir / "qmood.csv"));
  EXPECT_TRUE(fs::exists(dir / "analysis.json"));
  EXPECT_NE(r.out.find("3 classes"), std::string::npos);

  auto custom = invoke({"analyze", ws.project().string(), "--out", ws.scratch("elsewhere").string()});
  EXPECT_EQ(custom.code, kExitOk);
  EXPECT_TRUE(fs::exists(ws.scratch("elsewhere") / "metrics.csv"));
}

TEST(Cli, AnalyzeMissingDirectoryIsUsageError) {
  EXPECT_EQ(invoke({"analyze", "/nonexistent/refagent/project"}).code, kExitUsage);
}

TEST(Cli, GraphTarget) {
  TempWorkspace ws("tiny");
  auto r = invoke({"graph", ws.project().string(), "--target", "tiny.Circle"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("tiny.Shape (extends)"), std::string::npos);
  EXPECT_NE(r.out.find("tiny.Main"), std::string::npos);
  auto json = invoke({"graph", ws.project().string(), "--target", "tiny.Circle", "--json"});
  auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["target"], "tiny.Circle");
  auto unknown = invoke({"graph", ws.project().string(), "--target", "tiny.Nope"});
  EXPECT_EQ(unknown.code, kExitDomainError);
  EXPECT_NE(unknown.err.find("tiny.Nope"), std::string::npos);
}

// ---------------------------------------------------------------- refactor

TEST(Cli, RefactorScriptedRun) {
  TempWorkspace ws("bank");
  auto r = invoke({"refactor", ws.project().string(), "--backend", "scripted", "--playbook", playbook("bank_e2e"),
                   "--journal", ws.journal().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("COMMITTED 2, REVERTED 1, SKIPPED 0"), std::string::npos);
  EXPECT_TRUE(fs::exists(ws.journal() / "manifest.json"));

  auto report = invoke({"report", ws.journal().string(), "--out", ws.scratch("reports").string(), "--theirs",
                        fixture("miner/bank_refactorings.json").string()});
  ASSERT_EQ(report.code, kExitOk) << report.err;
  EXPECT_TRUE(fs::exists(ws.scratch("reports") / "srr.csv"));

  auto align = invoke({"evaluate", "align", "--ours", ws.journal().string(), "--theirs",
                       fixture("miner/bank_refactorings.json").string(), "--scenario", "2"});
  ASSERT_EQ(align.code, kExitOk) << align.err;
  EXPECT_NE(align.out.find(",2,1,4,0.666667,0.333333,0.444444"), std::string::npos);

  // One miner record has no range, so Scenario 1 is a domain error.
  auto s1 = invoke({"evaluate", "align", "--ours", ws.journal().string(), "--theirs",
                    fixture("miner/bank_refactorings.json").string(), "--scenario", "1"});
  EXPECT_EQ(s1.code, kExitDomainError);

  auto quality = invoke({"evaluate", "quality", "--before", fixture("bank").string(), "--after",
                         ws.project().string(), "--out", ws.scratch("quality").string()});
  ASSERT_EQ(quality.code, kExitOk) << quality.err;
  EXPECT_TRUE(fs::exists(ws.scratch("quality") / "qmood_qi.csv"));
  auto analysis = invoke({"evaluate", "quality", "--before", (ws.journal() / "analysis_before.json").string(),
                          "--after", (ws.journal() / "analysis_after.json").string()});
  EXPECT_EQ(analysis.code, kExitOk) << analysis.err;
  EXPECT_EQ(analysis.out, quality.out);
}

TEST(Cli, DryRunLeavesTheProjectUntouched) {
  TempWorkspace ws("bank");
  const std::string before = util::tree_digest(ws.project());
  auto r = invoke({"refactor", ws.project().string(), "--backend", "scripted", "--playbook", playbook("bank_e2e"),
                   "--dry-run"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(util::tree_digest(ws.project()), before);
  const fs::path journal = ws.project() / ".refagent" / "journal";
  for (const char* cls : {"bank.Account", "bank.Ledger", "bank.TransferService"}) {
    auto plan = nlohmann::json::parse(util::read_file(journal / cls / "plan.json"));
    EXPECT_TRUE(plan["plan"].is_object()) << cls;
    auto verdict = nlohmann::json::parse(util::read_file(journal / cls / "verdict.json"));
    EXPECT_EQ(verdict["verdict"], "SKIPPED");
  }
  EXPECT_NE(r.out.find("SKIPPED 3"), std::string::npos);
}

TEST(Cli, DomainErrorsExitOne) {
  TempWorkspace ws("bank");
  auto r = invoke({"refactor", ws.project().string(), "--backend", "scripted", "--playbook", playbook("bank_e2e"),
                   "--class", "bank.Nope"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("bank.Nope"), std::string::npos);

  TempWorkspace empty("");
  fs::create_directories(empty.journal());
  EXPECT_EQ(invoke({"report", empty.journal().string(), "--out", empty.scratch("r").string()}).code,
            kExitDomainError);
  // The scripted backend needs a playbook.
  EXPECT_EQ(invoke({"refactor", ws.project().string(), "--backend", "scripted"}).code, kExitDomainError);
}

TEST(Cli, Baseline) {
  TempWorkspace ws("bank");
  auto r = invoke({"baseline", ws.project().string(), "--backend", "scripted", "--playbook", playbook("bank_oneshot"),
                   "--k", "3", "--journal", ws.journal().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("pass@3: 1/3"), std::string::npos);
  EXPECT_TRUE(fs::exists(ws.journal() / "passk.json"));
}

// ---------------------------------------------------------------- config

struct FieldCase {
  std::string file_line;                // as written in refagent.toml
  std::vector<std::string> flag;        // command-line form
  nlohmann::json::json_pointer pointer;  // into --show-config output
  nlohmann::json default_value;
  nlohmann::json file_value;
  nlohmann::json flag_value;
};

nlohmann::json show_config(const TempWorkspace& ws, const std::vector<std::string>& extra) {
  std::vector<std::string> args = {"refactor", ws.project().string(), "--show-config"};
  args.insert(args.end(), extra.begin(), extra.end());
  auto r = invoke(args);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return nlohmann::json::parse(r.out);
}

TEST(CliConfig, FlagBeatsFileBeatsDefaultForEveryField) {
  using P = nlohmann::json::json_pointer;
  TempWorkspace ws("bank");
  const std::string pb = playbook("bank_e2e");
  const std::vector<FieldCase> cases = {
      {"seed = 5", {"--seed", "9"}, P("/seed"), 0, 5, 9},
      {"token_budget = 2048", {"--token-budget", "1024"}, P("/token_budget"), 4096, 2048, 1024},
      {"max_compile_iters = 7", {"--max-compile-iters", "3"}, P("/max_compile_iters"), 20, 7, 3},
      {"max_test_iters = 6", {"--max-test-iters", "2"}, P("/max_test_iters"), 20, 6, 2},
      {"llm_summary = false", {"--llm-summary"}, P("/llm_summary"), false, false, true},
      {"test_generator = \"external\"", {"--test-generator", "none"}, P("/test_generator"), "none", "external", "none"},
      {"classes = [\"bank.Ledger\"]", {"--class", "bank.Account"}, P("/classes"), nlohmann::json::array(),
       {"bank.Ledger"}, {"bank.Account"}},
      {"journal = \"file-journal\"", {"--journal", "/tmp/flag-journal"}, P("/journal"),
       (ws.project() / ".refagent" / "journal").string(), (ws.project() / "file-journal").string(),
       "/tmp/flag-journal"},
      {"[backend]\nkind = \"replay\"\nplaybook = \"x.json\"", {"--backend", "scripted"}, P("/backend/kind"),
       "scripted", "replay", "scripted"},
      {"[backend]\nmodel = \"file-model\"", {"--model", "flag-model"}, P("/backend/model"), "gpt-4o-mini",
       "file-model", "flag-model"},
      {"[backend]\nendpoint = \"http://file:1\"", {"--endpoint", "http://flag:2"}, P("/backend/endpoint"),
       "http://localhost:8000", "http://file:1", "http://flag:2"},
      {"[backend]\ntemperature = 0.25", {"--temperature", "1.5"}, P("/backend/temperature"), 0.7, 0.25, 1.5},
      {"[ablation]\ncontext = true", {"--no-context"}, P("/ablation/context"), true, true, false},
      {"[ablation]\ndepgraph = true", {"--no-depgraph"}, P("/ablation/depgraph"), true, true, false},
      {"[ablation]\ncodesearch = true", {"--no-codesearch"}, P("/ablation/codesearch"), true, true, false},
  };
  const fs::path cfg = ws.project() / kConfigFileName;
  for (const auto& c : cases) {
    SCOPED_TRACE(c.file_line);
    fs::remove(cfg);
    EXPECT_EQ(show_config(ws, {})[c.pointer], c.default_value);
    util::write_file(cfg, c.file_line + "\n");
    EXPECT_EQ(show_config(ws, {})[c.pointer], c.file_value);
    EXPECT_EQ(show_config(ws, c.flag)[c.pointer], c.flag_value);
  }
  fs::remove(cfg);
}

TEST(CliConfig, ExplicitConfigFileAndRelativePaths) {
  TempWorkspace ws("bank");
  const fs::path cfg = ws.scratch("conf") / "engine.toml";
  util::write_file(cfg,
                   "# comment\nseed = 3\n\n[backend]\nkind = \"scripted\"\nplaybook = \"playbooks/p.json\"\n\n"
                   "[thresholds]\nmagic_allowlist = [0, 1, 100]\nentry_points = [\"bank.Main\"]\n");
  auto j = show_config(ws, {"--config", cfg.string()});
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["backend"]["playbook"], (ws.scratch("conf") / "playbooks" / "p.json").string());
  EXPECT_EQ(j["thresholds"]["magic_allowlist"], nlohmann::json({0.0, 1.0, 100.0}));
  EXPECT_EQ(j["thresholds"]["entry_points"], nlohmann::json({"bank.Main"}));

  util::write_file(cfg, "[backend]\nplaybook = \"\"\n");
  EXPECT_EQ(show_config(ws, {"--config", cfg.string()})["backend"]["playbook"], "");
}

TEST(CliConfig, UnknownKeysAndBadValuesAreRejected) {
  TempWorkspace ws("bank");
  const fs::path cfg = ws.project() / kConfigFileName;
  util::write_file(cfg, "sede = 3\n");
  auto r = invoke({"refactor", ws.project().string(), "--show-config"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("sede"), std::string::npos);

  util::write_file(cfg, "[backend]\ntemperature = warm\n");
  EXPECT_EQ(invoke({"refactor", ws.project().string(), "--show-config"}).code, kExitDomainError);
  util::write_file(cfg, "[ablation]\ncontext = maybe\n");
  EXPECT_EQ(invoke({"refactor", ws.project().string(), "--show-config"}).code, kExitDomainError);
  EXPECT_THROW(load_config_file(ws.scratch("missing.toml")), ConfigError);
}

TEST(CliConfig, EveryKnownKeyParses) {
  TempWorkspace ws("");
  std::string text;
  std::string section;
  std::vector<std::string> keys = known_config_keys();
  std::stable_partition(keys.begin(), keys.end(),
                        [](const std::string& k) { return k.find('.') == std::string::npos; });
  for (const auto& key : keys) {
    auto dot = key.find('.');
    std::string sec = dot == std::string::npos ? "" : key.substr(0, dot);
    std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
    if (sec != section) {
      text += "\n[" + sec + "]\n";
      section = sec;
    }
    std::string value = "1";
    if (name == "kind") value = "\"http\"";
    else if (name == "llm_summary" || sec == "ablation") value = "false";
    else if (name == "temperature") value = "0.5";
    else if (name.ends_with("roots") || name == "classes" || name == "vcs_hook" || name == "generator_command" ||
             name == "entry_points")
      value = "[\"a\", \"b\"]";
    else if (name == "magic_allowlist") value = "[0, 2.5]";
    else if (name == "coefficient_table") value = "\"printed\"";
    else if (name == "test_generator") value = "\"stub\"";
    else if (name == "endpoint" || name == "model" || name == "playbook" || name == "record" ||
             name == "stub_dir" || name == "journal")
      value = "\"v\"";
    text += name + " = " + value + "\n";
  }
  util::write_file(ws.scratch("all.toml"), text);
  auto file = load_config_file(ws.scratch("all.toml"));
  EXPECT_EQ(file.values.size(), known_config_keys().size());
  orchestrator::EngineConfig config;
  apply_config_file(file, config);
  EXPECT_EQ(config.layout.source_roots, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(config.backend.kind, llm::BackendKind::kHttpChat);
  EXPECT_FALSE(config.ablation.codesearch);
  EXPECT_EQ(config.thresholds.magic_allowlist, (std::set<double>{0, 2.5}));
  EXPECT_EQ(config.coefficient_table, "printed");
}

}  // namespace
}  // namespace refagent::cli
