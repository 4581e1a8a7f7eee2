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

#include "refagent/orchestrator/diff.h"

#include <fmt/format.h>

#include <regex>
#include <sstream>
#include <vector>

#include "refagent/error.h"

namespace refagent::orchestrator {

namespace {

// A final line without a newline carries this suffix, so that adding or
// removing the last newline shows up as a changed line.
constexpr char kNoEol = '\x01';
constexpr const char* kNoEolMarker = "\\ No newline at end of file\n";

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) {
      out.push_back(text.substr(start) + kNoEol);
      break;
    }
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::string emit(char op, const std::string& item) {
  if (!item.empty() && item.back() == kNoEol) {
    return op + item.substr(0, item.size() - 1) + "\n" + kNoEolMarker;
  }
  return op + item + "\n";
}

enum class Op { kKeep, kDel, kAdd };

struct Step {
  Op op;
  std::size_t a;  // index into before (kKeep, kDel)
  std::size_t b;  // index into after (kKeep, kAdd)
};

std::vector<Step> align(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<Step> steps;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      steps.push_back({Op::kKeep, i++, j++});
    } else if (j < m && (i == n || lcs[i][j + 1] > lcs[i + 1][j])) {
      steps.push_back({Op::kAdd, i, j++});
    } else {
      steps.push_back({Op::kDel, i++, j});
    }
  }
  return steps;
}

}  // namespace

std::string unified_diff(const std::string& before, const std::string& after,
                         const std::string& path, int context) {
  if (before == after) return "";
  auto a = split(before), b = split(after);
  auto steps = align(a, b);
  std::string out = "--- a/" + path + "\n+++ b/" + path + "\n";
  const std::size_t ctx = static_cast<std::size_t>(context);
  std::size_t k = 0;
  while (k < steps.size()) {
    while (k < steps.size() && steps[k].op == Op::kKeep) ++k;
    if (k == steps.size()) break;
    std::size_t begin = k >= ctx ? k - ctx : 0;
    // Grow the hunk while changes are separated by at most 2*ctx kept lines.
    std::size_t end = k;
    while (true) {
      while (end < steps.size() && steps[end].op != Op::kKeep) ++end;
      std::size_t keep = end;
      while (keep < steps.size() && steps[keep].op == Op::kKeep) ++keep;
      if (keep < steps.size() && keep - end <= 2 * ctx) {
        end = keep;
        continue;
      }
      end = std::min(steps.size(), end + ctx);
      break;
    }
    std::size_t a_len = 0, b_len = 0;
    std::string body;
    for (std::size_t s = begin; s < end; ++s) {
      const Step& st = steps[s];
      if (st.op == Op::kKeep) {
        body += emit(' ', a[st.a]);
        ++a_len, ++b_len;
      } else if (st.op == Op::kDel) {
        body += emit('-', a[st.a]);
        ++a_len;
      } else {
        body += emit('+', b[st.b]);
        ++b_len;
      }
    }
    const std::size_t a_start = steps[begin].a, b_start = steps[begin].b;
    out += fmt::format("@@ -{},{} +{},{} @@\n", a_len ? a_start + 1 : a_start, a_len,
                       b_len ? b_start + 1 : b_start, b_len);
    out += body;
    k = end;
  }
  return out;
}

std::string apply_unified_diff(const std::string& before, const std::string& diff) {
  if (diff.empty()) return before;
  auto a = split(before);
  std::vector<std::string> out;
  std::size_t pos = 0;  // next unconsumed line of `before`
  static const std::regex kHunk(R"(^@@ -(\d+),(\d+) \+(\d+),(\d+) @@$)");
  std::vector<std::string> lines;
  {
    std::istringstream in(diff);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    std::smatch m;
    if (line.starts_with("--- ") || line.starts_with("+++ ")) continue;
    if (std::regex_match(line, m, kHunk)) {
      std::size_t start = std::stoul(m[1]);
      std::size_t first = std::stoul(m[2]) == 0 ? start : start - 1;
      if (first < pos || first > a.size()) throw Error("diff hunk out of order");
      while (pos < first) out.push_back(a[pos++]);
      continue;
    }
    if (line.empty() || line.starts_with("\\")) throw Error("malformed diff line");
    std::string text = line.substr(1);
    if (i + 1 < lines.size() && lines[i + 1].starts_with("\\")) {
      text += kNoEol;
      ++i;
    }
    const char op = line[0];
    if (op == ' ' || op == '-') {
      if (pos >= a.size() || a[pos] != text) throw Error("diff does not apply");
      if (op == ' ') out.push_back(text);
      ++pos;
    } else if (op == '+') {
      out.push_back(text);
    } else {
      throw Error("malformed diff line");
    }
  }
  while (pos < a.size()) out.push_back(a[pos++]);
  std::string result;
  for (const auto& item : out) {
    if (!item.empty() && item.back() == kNoEol) {
      result += item.substr(0, item.size() - 1);
    } else {
      result += item + "\n";
    }
  }
  return result;
}

}  // namespace refagent::orchestrator
