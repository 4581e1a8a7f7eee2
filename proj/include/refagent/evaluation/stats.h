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

#ifndef REFAGENT_EVALUATION_STATS_H_
#define REFAGENT_EVALUATION_STATS_H_

#include <utility>
#include <vector>

namespace refagent::evaluation {

/// True iff any of the k verdicts passed. Throws ArityMismatch unless
/// |verdicts| == k.
bool pass_at_k(const std::vector<bool>& verdicts, std::size_t k);

struct WilcoxonResult {
  double statistic = 0;  // min(W+, W-)
  double p_value = 1;    // two-sided
  int n = 0;             // pairs with a nonzero difference
  bool exact = true;
};

inline constexpr int kWilcoxonExactLimit = 20;

/// Null distribution of W+ for the given ranks (multiples of 1/2): entry s
/// is P(W+ = s/2) over all 2^n equally likely sign assignments.
std::vector<double> signed_rank_null_distribution(const std::vector<double>& ranks);

/// Signed-rank test on (before, after) pairs. Zero differences are dropped
/// and tied magnitudes share their average rank. Exact null distribution for
/// n <= 20, normal approximation with tie correction above. Throws
/// AllZeroDifferences.
WilcoxonResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs);

}  // namespace refagent::evaluation

#endif  // REFAGENT_EVALUATION_STATS_H_
