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

#include "refagent/evaluation/reports.h"

#include <fmt/format.h>

#include <map>

#include "refagent/error.h"
#include "refagent/evaluation/passk.h"
#include "refagent/evaluation/records.h"
#include "refagent/metrics/metrics.h"
#include "refagent/quality/qmood.h"
#include "refagent/smells/smells.h"
#include "refagent/util/files.h"

namespace refagent::evaluation {

namespace fs = std::filesystem;

namespace {

constexpr const char* kUndefined = "undefined";

std::string num(double v) { return fmt::format("{:.6f}", v); }

std::string num(const std::optional<double>& v) { return v ? num(*v) : kUndefined; }

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json read_json(const fs::path& path) {
  if (!fs::exists(path)) throw IncompleteJournal(path.string());
  try {
    return nlohmann::json::parse(util::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw IncompleteJournal(path.string() + " (" + e.what() + ")");
  }
}

SmellRow smell_row(const std::string& kind, const std::string& category,
                   const std::vector<smells::SmellInstance>& before,
                   const std::vector<smells::SmellInstance>& after) {
  SmellRow row;
  row.kind = kind;
  row.category = category;
  row.before = static_cast<int>(before.size());
  row.after = static_cast<int>(after.size());
  for (const auto& [k, counts] : smells::smell_diff(before, after)) {
    row.removed += counts.removed;
    row.introduced += counts.introduced;
  }
  if (row.before > 0) row.srr = smells::smell_reduction_rate(row.before, row.after);
  return row;
}

// fqn -> metric -> value
std::map<std::string, std::map<std::string, double>> class_values(const nlohmann::json& analysis) {
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& c : analysis.at("metrics").at("classes")) {
    auto& row = out[c.at("fqn").get<std::string>()];
    for (const auto& [k, v] : c.at("metrics").items()) row[k] = v.get<double>();
  }
  return out;
}

}  // namespace

nlohmann::json QualityComparison::to_json() const {
  auto smell_json = [](const SmellRow& r) {
    return nlohmann::json{{"kind", r.kind},       {"category", r.category},
                          {"before", r.before},   {"after", r.after},
                          {"removed", r.removed}, {"introduced", r.introduced},
                          {"srr", opt(r.srr)}};
  };
  nlohmann::json s = nlohmann::json::array();
  for (const auto& r : smells) s.push_back(smell_json(r));
  nlohmann::json q = nlohmann::json::array();
  for (const auto& r : qi) {
    q.push_back({{"attribute", r.attribute}, {"before", r.before}, {"after", r.after}, {"qi", opt(r.qi)}});
  }
  nlohmann::json t = nlohmann::json::array();
  for (const auto& r : tests) {
    nlohmann::json row = {{"metric", r.metric}, {"pairs", r.pairs}};
    if (r.result) {
      row["n"] = r.result->n;
      row["statistic"] = r.result->statistic;
      row["p_value"] = r.result->p_value;
      row["method"] = r.result->exact ? "exact" : "normal";
    } else {
      row["n"] = 0;
      row["statistic"] = nullptr;
      row["p_value"] = nullptr;
      row["method"] = nullptr;
    }
    t.push_back(std::move(row));
  }
  return {{"smells", s}, {"smells_total", smell_json(total)}, {"qmood_qi", q}, {"wilcoxon", t}};
}

QualityComparison compare_quality(const nlohmann::json& before, const nlohmann::json& after) {
  QualityComparison q;
  auto sb = smells::smells_from_json(before.at("smells"));
  auto sa = smells::smells_from_json(after.at("smells"));
  for (const auto& rule : smells::catalog()) {
    std::vector<smells::SmellInstance> b, a;
    for (const auto& s : sb) {
      if (s.kind == rule.kind) b.push_back(s);
    }
    for (const auto& s : sa) {
      if (s.kind == rule.kind) a.push_back(s);
    }
    q.smells.push_back(smell_row(rule.kind, smells::to_string(rule.category), b, a));
  }
  q.total = smell_row("TOTAL", "all", sb, sa);

  auto qb = quality::QmoodVector::from_json(before.at("qmood"));
  auto qa = quality::QmoodVector::from_json(after.at("qmood"));
  for (const auto& attr : quality::attribute_names()) {
    q.qi.push_back({attr, qb.get(attr), qa.get(attr),
                    quality::quality_improvement(qb.get(attr), qa.get(attr))});
  }

  auto cb = class_values(before);
  auto ca = class_values(after);
  const auto& columns = metrics::class_columns();
  for (std::size_t i = 1; i < columns.size(); ++i) {
    MetricTestRow row;
    row.metric = columns[i];
    std::vector<std::pair<double, double>> pairs;
    for (const auto& [fqn, values] : cb) {
      auto it = ca.find(fqn);
      if (it == ca.end()) continue;
      pairs.emplace_back(values.at(columns[i]), it->second.at(columns[i]));
    }
    row.pairs = static_cast<int>(pairs.size());
    try {
      row.result = wilcoxon_signed_rank(pairs);
    } catch (const AllZeroDifferences&) {
    }
    q.tests.push_back(std::move(row));
  }
  return q;
}

std::string smells_csv(const QualityComparison& q) {
  std::string out = "smell_kind,category,before,after,removed,introduced,srr\n";
  for (const auto& r : q.smells) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.kind, r.category, r.before, r.after, r.removed,
                       r.introduced, num(r.srr));
  }
  return out;
}

std::string qi_csv(const QualityComparison& q) {
  std::string out = "attribute,before,after,qi\n";
  for (const auto& r : q.qi) {
    out += fmt::format("{},{},{},{}\n", r.attribute, num(r.before), num(r.after), num(r.qi));
  }
  return out;
}

std::string wilcoxon_csv(const QualityComparison& q) {
  std::string out = "metric,pairs,n,statistic,p_value,method\n";
  for (const auto& r : q.tests) {
    if (r.result) {
      out += fmt::format("{},{},{},{},{},{}\n", r.metric, r.pairs, r.result->n,
                         num(r.result->statistic), num(r.result->p_value),
                         r.result->exact ? "exact" : "normal");
    } else {
      out += fmt::format("{},{},0,{},{},none\n", r.metric, r.pairs, kUndefined, kUndefined);
    }
  }
  return out;
}

std::string alignment_csv(const std::string& label, const AlignmentReport& r, const RangeRule* rule) {
  std::string out = "comparison,range_rule,tp,fp,fn,precision,recall,f1\n";
  out += fmt::format("{},{},{},{},{},{},{},{}\n", csv_field(label), rule ? rule->describe() : "none",
                     r.tp, r.fp, r.fn, num(r.precision), num(r.recall), num(r.f1));
  return out;
}

std::vector<fs::path> emit_reports(const fs::path& journal_root, const fs::path& reports_dir,
                                   const ReportOptions& options) {
  const nlohmann::json manifest = read_json(journal_root / "manifest.json");
  const nlohmann::json before = read_json(journal_root / "analysis_before.json");
  const nlohmann::json after = read_json(journal_root / "analysis_after.json");
  if (!manifest.contains("order") || !manifest.at("order").is_array()) {
    throw IncompleteJournal((journal_root / "manifest.json").string() + " has no class order");
  }

  util::DirectoryLock lock(reports_dir);
  std::vector<fs::path> written;
  auto write = [&](const std::string& name, const std::string& text) {
    util::write_file(reports_dir / name, text);
    written.push_back(reports_dir / name);
  };

  // Verdicts, in session order.
  std::map<std::string, int> tallies = {{"COMMITTED", 0}, {"REVERTED", 0}, {"SKIPPED", 0}};
  std::string verdicts = "class,verdict,compile_attempts,test_attempts,reason\n";
  nlohmann::json sessions = nlohmann::json::array();
  for (const auto& fqn_json : manifest.at("order")) {
    const std::string fqn = fqn_json.get<std::string>();
    const nlohmann::json v = read_json(journal_root / fqn / "verdict.json");
    const std::string verdict = v.at("verdict").get<std::string>();
    ++tallies[verdict];
    verdicts += fmt::format("{},{},{},{},{}\n", fqn, verdict, v.value("compile_attempts", 0),
                            v.value("test_attempts", 0), csv_field(v.value("reason", "")));
    sessions.push_back({{"class", fqn},
                        {"verdict", verdict},
                        {"compile_attempts", v.value("compile_attempts", 0)},
                        {"test_attempts", v.value("test_attempts", 0)}});
  }
  write("verdicts.csv", verdicts);

  QualityComparison quality = compare_quality(before, after);
  write("srr.csv", smells_csv(quality));
  write("qmood_qi.csv", qi_csv(quality));
  write("wilcoxon.csv", wilcoxon_csv(quality));

  // Alignment against an external record set, when one is given.
  nlohmann::json alignment = nullptr;
  std::string s1 = "comparison,range_rule,tp,fp,fn,precision,recall,f1\n";
  std::string s2 = s1;
  if (options.theirs) {
    std::vector<std::string> warnings;
    auto ours = load_engine_records(journal_root);
    auto theirs = load_miner_records(*options.theirs, RecordSource::kMiner, &warnings);
    const std::string label = "engine vs " + options.theirs->filename().string();
    auto r2 = match_scenario2(ours, theirs);
    s2 = alignment_csv(label, r2, nullptr);
    alignment = {{"theirs", options.theirs->filename().string()},
                 {"ours_records", ours.size()},
                 {"theirs_records", theirs.size()},
                 {"matching", "one-to-one"},
                 {"scenario2", r2.to_json()},
                 {"warnings", warnings}};
    try {
      auto r1 = match_scenario1(ours, theirs, options.range_rule);
      s1 = alignment_csv(label, r1, &options.range_rule);
      alignment["scenario1"] = r1.to_json();
      alignment["range_rule"] = options.range_rule.describe();
    } catch (const MissingRange& e) {
      alignment["scenario1"] = nullptr;
      alignment["scenario1_skipped"] = e.what();
    }
  }
  write("align_s1.csv", s1);
  write("align_s2.csv", s2);

  // pass@k of the single-agent baseline, when it was run.
  std::string passk = "class,k,passing_candidates,pass_at_k\n";
  nlohmann::json passk_json = nullptr;
  if (fs::exists(journal_root / kPassAtKFile)) {
    std::size_t k = 0;
    auto results = pass_at_k_from_json(read_json(journal_root / kPassAtKFile), &k);
    int passed = 0;
    for (const auto& r : results) {
      int ok = 0;
      for (bool v : r.verdicts) ok += v;
      const bool pass = pass_at_k(r.verdicts, k);
      passed += pass;
      passk += fmt::format("{},{},{},{}\n", r.fqn, k, ok, pass ? "true" : "false");
    }
    passk_json = {{"k", k},
                  {"classes", results.size()},
                  {"passing_classes", passed},
                  {"rate", results.empty() ? nlohmann::json(nullptr)
                                           : nlohmann::json(static_cast<double>(passed) /
                                                            static_cast<double>(results.size()))}};
  }
  write("passk.csv", passk);

  nlohmann::json report = {{"seed", manifest.value("seed", 0)},
                           {"tallies", tallies},
                           {"sessions", sessions},
                           {"quality", quality.to_json()},
                           {"alignment", alignment},
                           {"pass_at_k", passk_json}};
  write("report.json", report.dump(2) + "\n");
  return written;
}

}  // namespace refagent::evaluation
