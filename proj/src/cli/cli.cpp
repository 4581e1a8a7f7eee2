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

#include "refagent/cli/cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <memory>

#include "refagent/cli/config_file.h"
#include "refagent/depgraph/graph.h"
#include "refagent/error.h"
#include "refagent/evaluation/alignment.h"
#include "refagent/evaluation/passk.h"
#include "refagent/evaluation/records.h"
#include "refagent/evaluation/reports.h"
#include "refagent/llm/backends.h"
#include "refagent/metrics/metrics.h"
#include "refagent/orchestrator/project.h"
#include "refagent/quality/qmood.h"
#include "refagent/smells/smells.h"
#include "refagent/source/design_model.h"
#include "refagent/util/files.h"

namespace refagent::cli {

namespace fs = std::filesystem;

namespace {

fs::path default_journal(const fs::path& workspace) { return workspace / ".refagent" / "journal"; }

/// The workspace config file: --config when given, else <workspace>/refagent.toml if present.
std::optional<ConfigFile> find_config(const std::string& flag, const fs::path& workspace) {
  if (!flag.empty()) return load_config_file(fs::absolute(flag));
  if (!workspace.empty() && fs::exists(workspace / kConfigFileName)) {
    return load_config_file(fs::absolute(workspace / kConfigFileName));
  }
  return std::nullopt;
}

/// Settings shared by `refactor` and `baseline`. Every field is applied
/// only when its flag was given, so flags override the config file.
struct EngineFlags {
  std::string path;
  std::string config;
  std::string journal;
  std::vector<std::string> classes;
  std::uint64_t seed = 0;
  std::string backend;
  std::string playbook;
  std::string record;
  std::string endpoint;
  std::string model;
  double temperature = 0;
  long token_budget = 0;
  int max_compile_iters = 0;
  int max_test_iters = 0;
  std::string test_generator;
  std::string stub_dir;
  bool llm_summary = false;
  bool show_config = false;

  std::map<std::string, CLI::Option*> opts;

  void add_to(CLI::App* sub) {
    sub->add_option("path", path, "Project directory")->required()->check(CLI::ExistingDirectory);
    opts["config"] = sub->add_option("--config", config, "Config file (default <path>/refagent.toml)")
                         ->check(CLI::ExistingFile);
    opts["journal"] = sub->add_option("--journal", journal, "Journal directory (default <path>/.refagent/journal)");
    opts["class"] = sub->add_option("--class", classes, "Only these classes (repeatable)");
    opts["seed"] = sub->add_option("--seed", seed, "Seed for the class order");
    opts["backend"] = sub->add_option("--backend", backend, "Model backend")
                          ->check(CLI::IsMember({"scripted", "replay", "http"}));
    opts["playbook"] = sub->add_option("--playbook", playbook, "Playbook (scripted) or cassette (replay)")
                           ->check(CLI::ExistingFile);
    opts["record"] = sub->add_option("--record", record, "Also record every exchange to this cassette");
    opts["endpoint"] = sub->add_option("--endpoint", endpoint, "Chat completions endpoint (http backend)");
    opts["model"] = sub->add_option("--model", model, "Model name (http backend)");
    opts["temperature"] = sub->add_option("--temperature", temperature, "Sampling temperature");
    opts["token-budget"] = sub->add_option("--token-budget", token_budget, "Largest class sent, in tokens");
    opts["max-compile-iters"] =
        sub->add_option("--max-compile-iters", max_compile_iters, "Compile attempts per class");
    opts["max-test-iters"] = sub->add_option("--max-test-iters", max_test_iters, "Test attempts per class");
    opts["test-generator"] = sub->add_option("--test-generator", test_generator, "Test generator")
                                 ->check(CLI::IsMember({"none", "stub", "external"}));
    opts["stub-dir"] = sub->add_option("--stub-dir", stub_dir, "Pre-generated tests for the stub generator");
    opts["llm-summary"] = sub->add_flag("--llm-summary", llm_summary, "Ask the model to summarize build errors");
    opts["show-config"] = sub->add_flag("--show-config", show_config, "Print the resolved configuration and exit");
  }

  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }

  orchestrator::EngineConfig resolve(fs::path* journal_out) {
    const fs::path workspace = fs::absolute(path).lexically_normal();
    orchestrator::EngineConfig c;
    FileExtras extras;
    if (auto file = find_config(config, workspace)) extras = apply_config_file(*file, c);
    if (given("class")) c.only_classes = classes;
    if (given("seed")) c.seed = seed;
    if (given("backend")) c.backend.kind = llm::backend_kind_from_string(backend);
    if (given("playbook")) c.backend.playbook_path = fs::absolute(playbook);
    if (given("record")) c.backend.record_path = fs::absolute(record);
    if (given("endpoint")) c.backend.endpoint = endpoint;
    if (given("model")) c.backend.model = model;
    if (given("temperature")) c.backend.temperature = temperature;
    if (given("token-budget")) c.token_budget = token_budget;
    if (given("max-compile-iters")) c.max_compile_iters = max_compile_iters;
    if (given("max-test-iters")) c.max_test_iters = max_test_iters;
    if (given("test-generator")) c.test_generator = test_generator;
    if (given("stub-dir")) c.stub_dir = fs::absolute(stub_dir);
    if (given("llm-summary")) c.llm_summary = true;
    *journal_out = given("journal") ? fs::absolute(journal)
                   : extras.journal ? *extras.journal
                                    : default_journal(workspace);
    return c;
  }

  void print_config(const orchestrator::EngineConfig& c, const fs::path& journal_path,
                    std::ostream& out) const {
    nlohmann::json j = c.to_json();
    j["journal"] = journal_path.string();
    j["classes"] = c.only_classes;
    j["backend"]["playbook"] = c.backend.playbook_path.string();
    out << j.dump(2) << "\n";
  }
};

std::string smells_table(const std::vector<smells::SmellInstance>& found) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::string out = "kind,category,class,method,start,end,evidence\n";
  for (const auto& s : found) {
    out += fmt::format("{},{},{},{},{},{},{}\n", s.kind, smells::to_string(s.category), s.fqn,
                       field(s.method.value_or("")), s.line_range.start, s.line_range.end,
                       field(s.evidence));
  }
  return out;
}

int cmd_analyze(const std::string& path, const std::string& config_flag, const std::string& out_flag,
                std::ostream& out) {
  const fs::path workspace = fs::absolute(path).lexically_normal();
  orchestrator::EngineConfig config;
  if (auto file = find_config(config_flag, workspace)) apply_config_file(*file, config);
  const fs::path out_dir = out_flag.empty() ? workspace / ".refagent" / "analysis" : fs::absolute(out_flag);

  auto model = source::load_design_model(workspace, config.layout);
  auto graph = depgraph::extract_dependencies(model);
  auto design = metrics::compute_design_metrics(model, graph);
  auto found = smells::detect_smells(model, graph, config.thresholds);
  auto qmood = quality::qmood_attributes(design.aggregate, config.coefficients());

  std::string qmood_csv = "attribute,value\n";
  for (const auto& a : quality::attribute_names()) qmood_csv += fmt::format("{},{:.6f}\n", a, qmood.get(a));
  util::write_file(out_dir / "metrics.csv", metrics::to_csv(design));
  util::write_file(out_dir / "smells.csv", smells_table(found));
  util::write_file(out_dir / "qmood.csv", qmood_csv);
  nlohmann::json analysis = {{"metrics", metrics::to_json(design)},
                             {"qmood", qmood.to_json()},
                             {"smells", smells::to_json(found)}};
  util::write_file(out_dir / "analysis.json", analysis.dump(2) + "\n");

  out << fmt::format("{} classes, {} smells\n", design.classes.size(), found.size());
  for (const auto& a : quality::attribute_names()) out << fmt::format("{:<20} {:>10.4f}\n", a, qmood.get(a));
  out << "wrote " << (out_dir / "metrics.csv").string() << "\n";
  return kExitOk;
}

int cmd_graph(const std::string& path, const std::string& target, bool json, std::ostream& out) {
  const fs::path workspace = fs::absolute(path).lexically_normal();
  orchestrator::EngineConfig config;
  if (auto file = find_config("", workspace)) apply_config_file(*file, config);
  auto model = source::load_design_model(workspace, config.layout);
  auto graph = depgraph::extract_dependencies(model);
  if (target.empty()) {
    nlohmann::json j = graph.to_json();
    j["cycles"] = depgraph::find_cycles(graph);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  auto outgoing = graph.outgoing(target);
  auto incoming = graph.incoming(target);
  auto tests = depgraph::related_tests(graph, model, target);
  if (json) {
    auto edges = [](const std::vector<depgraph::Edge>& list) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& e : list) a.push_back({{"from", e.from}, {"to", e.to}, {"kind", depgraph::to_string(e.kind)}});
      return a;
    };
    out << nlohmann::json{{"target", target},
                          {"outgoing", edges(outgoing)},
                          {"incoming", edges(incoming)},
                          {"related_tests", tests}}
                   .dump(2)
        << "\n";
    return kExitOk;
  }
  out << target << "\n";
  out << "depends on:\n";
  for (const auto& e : outgoing) out << fmt::format("  {} ({})\n", e.to, depgraph::to_string(e.kind));
  out << "used by:\n";
  for (const auto& e : incoming) out << fmt::format("  {} ({})\n", e.from, depgraph::to_string(e.kind));
  out << "related tests:\n";
  for (const auto& t : tests) out << "  " << t << "\n";
  return kExitOk;
}

int cmd_refactor(EngineFlags& flags, bool no_context, bool no_depgraph, bool no_codesearch,
                 bool dry_run, std::ostream& out) {
  fs::path journal;
  auto config = flags.resolve(&journal);
  if (no_context) config.ablation.context = false;
  if (no_depgraph) config.ablation.depgraph = false;
  if (no_codesearch) config.ablation.codesearch = false;
  if (dry_run) config.dry_run = true;
  if (flags.show_config) {
    flags.print_config(config, journal, out);
    return kExitOk;
  }
  config.validate();
  auto backend = llm::make_backend(config.backend);
  auto report = orchestrator::run_project(fs::absolute(flags.path).lexically_normal(), config, *backend, journal);
  for (const auto& s : report.sessions) {
    out << fmt::format("{:<40} {:<9} compile={} test={}  {}\n", s.fqn, orchestrator::to_string(s.verdict),
                       s.compile_attempts, s.test_attempts, s.reason);
  }
  out << fmt::format("COMMITTED {}, REVERTED {}, SKIPPED {}\n", report.tallies["COMMITTED"],
                     report.tallies["REVERTED"], report.tallies["SKIPPED"]);
  out << "journal: " << journal.string() << "\n";
  return kExitOk;
}

int cmd_baseline(EngineFlags& flags, std::size_t k, std::ostream& out) {
  fs::path journal;
  auto config = flags.resolve(&journal);
  if (flags.show_config) {
    flags.print_config(config, journal, out);
    return kExitOk;
  }
  config.validate();
  auto backend = llm::make_backend(config.backend);
  auto results = evaluation::run_single_agent_baseline(fs::absolute(flags.path).lexically_normal(), config,
                                                       *backend, k, journal);
  int passed = 0;
  for (const auto& r : results) {
    std::string marks;
    for (bool v : r.verdicts) marks += v ? 'P' : '.';
    out << fmt::format("{:<40} {} {}\n", r.fqn, marks, r.pass ? "pass" : "fail");
    passed += r.pass;
  }
  out << fmt::format("pass@{}: {}/{}\n", k, passed, results.size());
  out << "wrote " << (journal / evaluation::kPassAtKFile).string() << "\n";
  return kExitOk;
}

std::vector<evaluation::RefactoringRecord> load_records(const fs::path& p, evaluation::RecordSource source,
                                                        std::ostream& err) {
  if (fs::is_directory(p)) return evaluation::load_engine_records(p);
  std::vector<std::string> warnings;
  auto records = evaluation::load_miner_records(p, source, &warnings);
  for (const auto& w : warnings) err << "warning: " << p.string() << ": " << w << "\n";
  return records;
}

int cmd_align(const std::string& ours, const std::string& theirs, int scenario, const std::string& rule_text,
              const std::string& out_file, std::ostream& out, std::ostream& err) {
  auto a = load_records(fs::absolute(ours), evaluation::RecordSource::kBaseline, err);
  auto b = load_records(fs::absolute(theirs), evaluation::RecordSource::kMiner, err);
  const auto rule = evaluation::range_rule_from_string(rule_text);
  const std::string label = fs::path(ours).filename().string() + " vs " + fs::path(theirs).filename().string();
  std::string csv;
  if (scenario == 1) {
    csv = evaluation::alignment_csv(label, evaluation::match_scenario1(a, b, rule), &rule);
  } else {
    csv = evaluation::alignment_csv(label, evaluation::match_scenario2(a, b), nullptr);
  }
  if (!out_file.empty()) util::write_file(fs::absolute(out_file), csv);
  out << csv;
  return kExitOk;
}

nlohmann::json analysis_of(const fs::path& p, const std::string& config_flag) {
  if (fs::is_regular_file(p)) {
    try {
      return nlohmann::json::parse(util::read_file(p));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(p.string() + ": " + e.what());
    }
  }
  orchestrator::EngineConfig config;
  if (auto file = find_config(config_flag, p)) apply_config_file(*file, config);
  return orchestrator::analyze_workspace(p, config);
}

int cmd_quality(const std::string& before, const std::string& after, const std::string& config_flag,
                const std::string& out_dir, std::ostream& out) {
  auto q = evaluation::compare_quality(analysis_of(fs::absolute(before), config_flag),
                                       analysis_of(fs::absolute(after), config_flag));
  if (!out_dir.empty()) {
    const fs::path dir = fs::absolute(out_dir);
    util::write_file(dir / "srr.csv", evaluation::smells_csv(q));
    util::write_file(dir / "qmood_qi.csv", evaluation::qi_csv(q));
    util::write_file(dir / "wilcoxon.csv", evaluation::wilcoxon_csv(q));
    util::write_file(dir / "quality.json", q.to_json().dump(2) + "\n");
  }
  out << evaluation::smells_csv(q) << "\n" << evaluation::qi_csv(q);
  return kExitOk;
}

int cmd_report(const std::string& journal, const std::string& out_dir, const std::string& theirs,
               const std::string& rule_text, std::ostream& out) {
  evaluation::ReportOptions options;
  if (!theirs.empty()) options.theirs = fs::absolute(theirs);
  options.range_rule = evaluation::range_rule_from_string(rule_text);
  for (const auto& f : evaluation::emit_reports(fs::absolute(journal), fs::absolute(out_dir), options)) {
    out << "wrote " << f.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-agent refactoring engine for Java projects", "refagent"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "refagent 0.1.0");

  // analyze
  std::string a_path, a_config, a_out;
  auto* analyze = app.add_subcommand("analyze", "Design metrics, smells and QMOOD attributes of a project");
  analyze->add_option("path", a_path, "Project directory")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("--config", a_config, "Config file")->check(CLI::ExistingFile);
  analyze->add_option("--out", a_out, "Output directory (default <path>/.refagent/analysis)");

  // graph
  std::string g_path, g_target;
  bool g_json = false;
  auto* graph = app.add_subcommand("graph", "Class dependency graph, or one class's neighbourhood");
  graph->add_option("path", g_path, "Project directory")->required()->check(CLI::ExistingDirectory);
  graph->add_option("--target", g_target, "Fully qualified class name");
  graph->add_flag("--json", g_json, "JSON output for --target");

  // refactor
  EngineFlags r_flags;
  bool no_context = false, no_depgraph = false, no_codesearch = false, dry_run = false;
  auto* refactor = app.add_subcommand("refactor", "Plan, rewrite and verify each class of a project");
  r_flags.add_to(refactor);
  refactor->add_flag("--no-context", no_context, "Drop the metrics section and code_metrics tool");
  refactor->add_flag("--no-depgraph", no_depgraph, "Drop the dependency section and dependency_graph tool");
  refactor->add_flag("--no-codesearch", no_codesearch, "Drop dependent sources and the code_search tool");
  refactor->add_flag("--dry-run", dry_run, "Plan and journal only; never modify the project");

  // baseline
  EngineFlags b_flags;
  std::size_t b_k = 3;
  auto* baseline = app.add_subcommand("baseline", "Single-agent pass@k baseline");
  b_flags.add_to(baseline);
  baseline->add_option("--k", b_k, "Candidates per class")->capture_default_str()->check(CLI::PositiveNumber);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Compare refactoring records or project quality");
  evaluate->require_subcommand(1);
  std::string e_ours, e_theirs, e_rule = "intersect", e_out;
  int e_scenario = 0;
  auto* align = evaluate->add_subcommand("align", "Precision, recall and F1 against a baseline");
  align->add_option("--ours", e_ours, "Engine journal, or RefactoringMiner-format JSON")
      ->required()
      ->check(CLI::ExistingPath);
  align->add_option("--theirs", e_theirs, "RefactoringMiner JSON")->required()->check(CLI::ExistingFile);
  align->add_option("--scenario", e_scenario, "1: with line ranges, 2: without")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  auto range_check = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          evaluation::range_rule_from_string(s);
          return {};
        } catch (const ConfigError& e) {
          return e.what();
        }
      },
      "RULE", "range rule");
  align->add_option("--range-rule", e_rule, "intersect, exact or jaccard:<tau>")
      ->capture_default_str()
      ->check(range_check);
  align->add_option("--out", e_out, "Also write the CSV here");

  std::string q_before, q_after, q_config, q_out;
  auto* quality_cmd = evaluate->add_subcommand("quality", "Smell reduction and QMOOD change between two versions");
  quality_cmd->add_option("--before", q_before, "Project directory or analysis JSON")
      ->required()
      ->check(CLI::ExistingPath);
  quality_cmd->add_option("--after", q_after, "Project directory or analysis JSON")
      ->required()
      ->check(CLI::ExistingPath);
  quality_cmd->add_option("--config", q_config, "Config file")->check(CLI::ExistingFile);
  quality_cmd->add_option("--out", q_out, "Write srr.csv, qmood_qi.csv, wilcoxon.csv and quality.json here");

  // report
  std::string rep_journal, rep_out, rep_theirs, rep_rule = "intersect";
  auto* report = app.add_subcommand("report", "CSV and JSON tables from a journal");
  report->add_option("journal", rep_journal, "Journal directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--out", rep_out, "Reports directory")->required();
  report->add_option("--theirs", rep_theirs, "RefactoringMiner JSON to align against")->check(CLI::ExistingFile);
  report->add_option("--range-rule", rep_rule, "intersect, exact or jaccard:<tau>")
      ->capture_default_str()
      ->check(range_check);

  // CLI11 reports a mistyped subcommand as a missing one; name it instead.
  CLI::App* level = &app;
  for (const auto& word : args) {
    if (word.starts_with("-") || level->get_subcommands({}).empty()) break;
    CLI::App* next = nullptr;
    for (auto* sub : level->get_subcommands({})) {
      if (sub->get_name() == word) next = sub;
    }
    if (!next) {
      err << "unknown subcommand '" << word << "'\nRun with --help for more information.\n";
      return kExitUsage;
    }
    level = next;
  }

  std::vector<std::string> argv_store = {"refagent"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(a_path, a_config, a_out, out);
    if (*graph) return cmd_graph(g_path, g_target, g_json, out);
    if (*refactor) return cmd_refactor(r_flags, no_context, no_depgraph, no_codesearch, dry_run, out);
    if (*baseline) return cmd_baseline(b_flags, b_k, out);
    if (*align) return cmd_align(e_ours, e_theirs, e_scenario, e_rule, e_out, out, err);
    if (*quality_cmd) return cmd_quality(q_before, q_after, q_config, q_out, out);
    if (*report) return cmd_report(rep_journal, rep_out, rep_theirs, rep_rule, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace refagent::cli
