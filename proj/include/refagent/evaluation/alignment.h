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

#ifndef REFAGENT_EVALUATION_ALIGNMENT_H_
#define REFAGENT_EVALUATION_ALIGNMENT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "refagent/evaluation/records.h"

namespace refagent::evaluation {

struct RangeRule {
  enum class Kind { kIntersect, kExact, kJaccard };
  Kind kind = Kind::kIntersect;
  double tau = 0.5;  // kJaccard only

  bool aligned(const source::LineRange& a, const source::LineRange& b) const;
  std::string describe() const;
};

/// Parses "intersect", "exact" or "jaccard:<tau>". Throws ConfigError.
RangeRule range_rule_from_string(const std::string& s);

/// Ratios are nullopt where the formula divides by zero.
struct AlignmentReport {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;  // (ours, theirs) indices

  nlohmann::json to_json() const;
};

std::optional<double> precision(int tp, int fp);
std::optional<double> recall(int tp, int fn);
std::optional<double> f1_score(std::optional<double> p, std::optional<double> r);

/// Method keys agree when equal, or when either side gives a bare name and
/// the names agree.
bool same_method(const std::optional<std::string>& a, const std::optional<std::string>& b);

/// Type, class, method and aligned line ranges. Throws MissingRange when a
/// record on either side has no range.
AlignmentReport match_scenario1(const std::vector<RefactoringRecord>& ours,
                                const std::vector<RefactoringRecord>& theirs,
                                const RangeRule& rule = {});

/// Type, class and method; ranges ignored.
AlignmentReport match_scenario2(const std::vector<RefactoringRecord>& ours,
                                const std::vector<RefactoringRecord>& theirs);

}  // namespace refagent::evaluation

#endif  // REFAGENT_EVALUATION_ALIGNMENT_H_
