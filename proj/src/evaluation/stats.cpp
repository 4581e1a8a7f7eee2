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

#include "refagent/evaluation/stats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "refagent/error.h"

namespace refagent::evaluation {

bool pass_at_k(const std::vector<bool>& verdicts, std::size_t k) {
  if (verdicts.size() != k) throw ArityMismatch(verdicts.size(), k);
  return std::any_of(verdicts.begin(), verdicts.end(), [](bool v) { return v; });
}

std::vector<double> signed_rank_null_distribution(const std::vector<double>& ranks) {
  // Sums are tracked in half units so average ranks stay integral.
  std::vector<int> half;
  int total = 0;
  for (double r : ranks) {
    half.push_back(static_cast<int>(std::lround(r * 2)));
    total += half.back();
  }
  std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
  count[0] = 1;
  for (int h : half) {
    for (int s = total; s >= h; --s) count[s] += count[s - h];
  }
  const double patterns = std::ldexp(1.0, static_cast<int>(ranks.size()));
  for (double& c : count) c /= patterns;
  return count;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<double> diffs;
  for (const auto& [before, after] : pairs) {
    if (after - before != 0) diffs.push_back(after - before);
  }
  if (diffs.empty()) throw AllZeroDifferences();
  const int n = static_cast<int>(diffs.size());

  // Average ranks of |d|; ties share the mean of the ranks they span.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::fabs(diffs[a]) < std::fabs(diffs[b]); });
  std::vector<double> rank(n);
  double tie_term = 0;  // sum of t^3 - t over tie groups
  for (int i = 0; i < n;) {
    int j = i;
    while (j + 1 < n && std::fabs(diffs[order[j + 1]]) == std::fabs(diffs[order[i]])) ++j;
    const double avg = (i + j + 2) / 2.0;
    for (int k = i; k <= j; ++k) rank[order[k]] = avg;
    const double t = j - i + 1;
    tie_term += t * t * t - t;
    i = j + 1;
  }
  double w_plus = 0, w_minus = 0;
  for (int i = 0; i < n; ++i) (diffs[i] > 0 ? w_plus : w_minus) += rank[i];

  WilcoxonResult r;
  r.n = n;
  r.statistic = std::min(w_plus, w_minus);
  if (n <= kWilcoxonExactLimit) {
    const auto dist = signed_rank_null_distribution(rank);
    const auto stat_half = static_cast<std::size_t>(std::lround(r.statistic * 2));
    double tail = 0;
    for (std::size_t s = 0; s <= stat_half && s < dist.size(); ++s) tail += dist[s];
    r.p_value = std::min(1.0, 2 * tail);
    r.exact = true;
  } else {
    const double mean = n * (n + 1) / 4.0;
    const double var = n * (n + 1) * (2.0 * n + 1) / 24.0 - tie_term / 48.0;
    const double z = (r.statistic - mean) / std::sqrt(var);
    r.p_value = std::min(1.0, std::erfc(-z / std::sqrt(2.0)));  // 2 * Phi(z), z <= 0
    r.exact = false;
  }
  return r;
}

}  // namespace refagent::evaluation
