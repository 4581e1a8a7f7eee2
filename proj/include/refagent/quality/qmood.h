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

#ifndef REFAGENT_QUALITY_QMOOD_H_
#define REFAGENT_QUALITY_QMOOD_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "refagent/metrics/metrics.h"

namespace refagent::quality {

/// The six attributes, in report order.
const std::vector<std::string>& attribute_names();

/// attribute -> list of (metric, weight) terms. Terms may repeat a metric;
/// repeated terms simply add up.
struct CoefficientTable {
  std::map<std::string, std::vector<std::pair<std::string, double>>> terms;

  /// Default: the printed weights with NOS and MOP read as NOP and the
  /// repeated Understandability terms collapsed to one occurrence each.
  static CoefficientTable standard();
  /// The weights exactly as printed, repeated Understandability terms kept
  /// (so CAM/NOP/NOM/DSC weigh ±0.66); NOS and MOP still read as NOP.
  static CoefficientTable printed();
  /// JSON: {"Reusability": [["DCC", -0.25], ...], ...}. Every attribute
  /// must be present. Unknown metric names surface at evaluation time.
  static CoefficientTable from_json(const nlohmann::json& j);
  static CoefficientTable load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

struct QmoodVector {
  std::array<double, 6> values{};

  double get(const std::string& attribute) const;
  nlohmann::json to_json() const;
  static QmoodVector from_json(const nlohmann::json& j);
};

/// Σ weight·metric per attribute. Throws UnknownMetricName.
QmoodVector qmood_attributes(const metrics::MetricVector& metrics,
                             const CoefficientTable& coeffs = CoefficientTable::standard());

/// (after - before) / |before| * 100, or nullopt when before is 0.
std::optional<double> quality_improvement(double before, double after);
std::array<std::optional<double>, 6> quality_improvement(const QmoodVector& before,
                                                         const QmoodVector& after);

/// (before - after) / before * 100. Throws UndefinedRate when before is 0.
double improvement_rate(double m_before, double m_after);

}  // namespace refagent::quality

#endif  // REFAGENT_QUALITY_QMOOD_H_
