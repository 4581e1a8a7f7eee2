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

#include "refagent/evaluation/alignment.h"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "refagent/error.h"

namespace refagent::evaluation {

namespace {

std::string method_name(const std::string& sig) { return sig.substr(0, sig.find('(')); }

// Indices sorted by (class, start line), then type and method for stability.
std::vector<std::size_t> sorted_order(const std::vector<RefactoringRecord>& records) {
  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = records[a];
    const auto& y = records[b];
    int xs = x.line_range ? x.line_range->start : 0;
    int ys = y.line_range ? y.line_range->start : 0;
    return std::tie(x.class_fqn, xs, x.refactoring_type) <
           std::tie(y.class_fqn, ys, y.refactoring_type);
  });
  return idx;
}

// One-to-one matching. Each record of `ours`, in sorted order, takes the
// first compatible record of `theirs` in sorted order; when that record is
// taken, an augmenting path re-seats earlier matches so the final matching
// is maximum (and its size does not depend on which side is "ours").
AlignmentReport match(const std::vector<RefactoringRecord>& ours,
                      const std::vector<RefactoringRecord>& theirs,
                      const std::function<bool(const RefactoringRecord&, const RefactoringRecord&)>& ok) {
  const auto a = sorted_order(ours);
  const auto b = sorted_order(theirs);
  std::vector<std::vector<std::size_t>> adj(ours.size());
  for (std::size_t i : a) {
    for (std::size_t j : b) {
      if (ok(ours[i], theirs[j])) adj[i].push_back(j);
    }
  }
  std::vector<long> owner(theirs.size(), -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]))) {
        owner[j] = static_cast<long>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i : a) {
    seen.assign(theirs.size(), 0);
    augment(i);
  }

  AlignmentReport r;
  for (std::size_t j : b) {
    if (owner[j] >= 0) r.matched_pairs.emplace_back(static_cast<std::size_t>(owner[j]), j);
  }
  std::sort(r.matched_pairs.begin(), r.matched_pairs.end());
  r.tp = static_cast<int>(r.matched_pairs.size());
  r.fp = static_cast<int>(ours.size()) - r.tp;
  r.fn = static_cast<int>(theirs.size()) - r.tp;
  r.precision = precision(r.tp, r.fp);
  r.recall = recall(r.tp, r.fn);
  r.f1 = f1_score(r.precision, r.recall);
  return r;
}

bool same_target(const RefactoringRecord& x, const RefactoringRecord& y) {
  return normalize_refactoring_type(x.refactoring_type) ==
             normalize_refactoring_type(y.refactoring_type) &&
         x.class_fqn == y.class_fqn && same_method(x.method_signature, y.method_signature);
}

nlohmann::json ratio(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

bool RangeRule::aligned(const source::LineRange& a, const source::LineRange& b) const {
  switch (kind) {
    case Kind::kIntersect: return a.intersects(b);
    case Kind::kExact: return a == b;
    case Kind::kJaccard: {
      if (!a.intersects(b)) return false;
      int inter = std::min(a.end, b.end) - std::max(a.start, b.start) + 1;
      int uni = a.length() + b.length() - inter;
      return static_cast<double>(inter) / uni >= tau;
    }
  }
  return false;
}

std::string RangeRule::describe() const {
  switch (kind) {
    case Kind::kIntersect: return "intersect";
    case Kind::kExact: return "exact";
    case Kind::kJaccard: return fmt::format("jaccard:{}", tau);
  }
  return "intersect";
}

RangeRule range_rule_from_string(const std::string& s) {
  if (s == "intersect") return {};
  if (s == "exact") return {RangeRule::Kind::kExact, 0};
  if (s.starts_with("jaccard:")) {
    try {
      double tau = std::stod(s.substr(8));
      if (tau > 0 && tau <= 1) return {RangeRule::Kind::kJaccard, tau};
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("range rule must be intersect, exact or jaccard:<tau in (0,1]>, got '" + s + "'");
}

nlohmann::json AlignmentReport::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [i, j] : matched_pairs) pairs.push_back({i, j});
  return {{"tp", tp},
          {"fp", fp},
          {"fn", fn},
          {"precision", ratio(precision)},
          {"recall", ratio(recall)},
          {"f1", ratio(f1)},
          {"matched_pairs", pairs}};
}

std::optional<double> precision(int tp, int fp) {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / (tp + fp);
}

std::optional<double> recall(int tp, int fn) {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / (tp + fn);
}

std::optional<double> f1_score(std::optional<double> p, std::optional<double> r) {
  if (!p || !r || *p + *r == 0) return std::nullopt;
  return 2 * *p * *r / (*p + *r);
}

bool same_method(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a || !b) return !a && !b;
  if (*a == *b) return true;
  const bool a_bare = a->find('(') == std::string::npos;
  const bool b_bare = b->find('(') == std::string::npos;
  return (a_bare || b_bare) && method_name(*a) == method_name(*b);
}

AlignmentReport match_scenario1(const std::vector<RefactoringRecord>& ours,
                                const std::vector<RefactoringRecord>& theirs,
                                const RangeRule& rule) {
  for (const auto* side : {&ours, &theirs}) {
    for (const auto& r : *side) {
      if (!r.line_range) throw MissingRange();
    }
  }
  return match(ours, theirs, [&](const RefactoringRecord& x, const RefactoringRecord& y) {
    return same_target(x, y) && rule.aligned(*x.line_range, *y.line_range);
  });
}

AlignmentReport match_scenario2(const std::vector<RefactoringRecord>& ours,
                                const std::vector<RefactoringRecord>& theirs) {
  return match(ours, theirs, same_target);
}

}  // namespace refagent::evaluation
