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

#ifndef REFAGENT_EVALUATION_REPORTS_H_
#define REFAGENT_EVALUATION_REPORTS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/evaluation/alignment.h"
#include "refagent/evaluation/stats.h"

namespace refagent::evaluation {

struct SmellRow {
  std::string kind;
  std::string category;
  int before = 0;
  int after = 0;
  int removed = 0;
  int introduced = 0;
  std::optional<double> srr;  // undefined when before is 0
};

struct QiRow {
  std::string attribute;
  double before = 0;
  double after = 0;
  std::optional<double> qi;  // undefined when before is 0
};

/// Paired test over the classes present before and after.
struct MetricTestRow {
  std::string metric;
  int pairs = 0;
  std::optional<WilcoxonResult> result;  // nullopt: no pair differs
};

struct QualityComparison {
  std::vector<SmellRow> smells;  // one row per catalog kind, catalog order
  SmellRow total;
  std::vector<QiRow> qi;  // attribute order
  std::vector<MetricTestRow> tests;  // class metric column order

  nlohmann::json to_json() const;
};

/// Compares two project analyses ({"metrics", "qmood", "smells"} documents
/// as written to analysis_before.json / analysis_after.json).
QualityComparison compare_quality(const nlohmann::json& before, const nlohmann::json& after);

std::string smells_csv(const QualityComparison& q);
std::string qi_csv(const QualityComparison& q);
std::string wilcoxon_csv(const QualityComparison& q);
std::string alignment_csv(const std::string& label, const AlignmentReport& r, const RangeRule* rule);

struct ReportOptions {
  /// RefactoringMiner output to align the engine's committed plans against.
  std::optional<std::filesystem::path> theirs;
  RangeRule range_rule;
};

/// Writes verdicts.csv, srr.csv, qmood_qi.csv, wilcoxon.csv, align_s1.csv,
/// align_s2.csv, passk.csv and report.json into `reports_dir`; returns their
/// paths. Output depends only on the journal (no timestamps). Throws
/// IncompleteJournal when the manifest, an analysis or a listed session's
/// verdict is missing.
std::vector<std::filesystem::path> emit_reports(const std::filesystem::path& journal_root,
                                                const std::filesystem::path& reports_dir,
                                                const ReportOptions& options = {});

}  // namespace refagent::evaluation

#endif  // REFAGENT_EVALUATION_REPORTS_H_
