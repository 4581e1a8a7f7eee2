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

#include "refagent/quality/qmood.h"

#include <cmath>
#include <fstream>

#include "refagent/error.h"

namespace refagent::quality {

namespace {

using Terms = std::vector<std::pair<std::string, double>>;

std::size_t attribute_index(const std::string& name) {
  const auto& names = attribute_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw ConfigError("unknown quality attribute " + name);
}

CoefficientTable base_table() {
  CoefficientTable t;
  t.terms["Reusability"] = {{"DCC", -0.25}, {"CAM", 0.25}, {"CIS", 0.5}, {"DSC", 0.5}};
  t.terms["Flexibility"] = {{"DAM", 0.25}, {"DCC", -0.25}, {"MOA", 0.5}, {"NOP", 0.5}};
  t.terms["Effectiveness"] = {
      {"ANA", 0.2}, {"DAM", 0.2}, {"MOA", 0.2}, {"MFA", 0.2}, {"NOP", 0.2}};
  t.terms["Extendibility"] = {{"ANA", 0.5}, {"DCC", -0.5}, {"MFA", 0.5}, {"NOP", 0.5}};
  t.terms["Functionality"] = {
      {"MOA", 0.12}, {"NOP", 0.22}, {"CIS", 0.22}, {"DSC", 0.22}, {"NOH", 0.22}};
  return t;
}

}  // namespace

const std::vector<std::string>& attribute_names() {
  static const std::vector<std::string> kNames = {"Reusability",   "Flexibility",
                                                  "Understandability", "Effectiveness",
                                                  "Extendibility", "Functionality"};
  return kNames;
}

CoefficientTable CoefficientTable::standard() {
  CoefficientTable t = base_table();
  t.terms["Understandability"] = {{"ANA", -0.33}, {"DAM", 0.33},  {"DCC", -0.33}, {"CAM", 0.33},
                                  {"NOP", -0.33}, {"NOM", -0.33}, {"DSC", -0.33}};
  return t;
}

CoefficientTable CoefficientTable::printed() {
  CoefficientTable t = base_table();
  t.terms["Understandability"] = {{"ANA", -0.33}, {"DAM", 0.33},  {"DCC", -0.33},
                                  {"CAM", 0.33},  {"NOP", -0.33}, {"NOM", -0.33},
                                  {"DSC", -0.33}, {"CAM", 0.33},  {"NOP", -0.33},
                                  {"NOM", -0.33}, {"DSC", -0.33}};
  return t;
}

CoefficientTable CoefficientTable::from_json(const nlohmann::json& j) {
  CoefficientTable t;
  for (const auto& name : attribute_names()) {
    if (!j.contains(name)) throw ConfigError("coefficient table lacks " + name);
    Terms terms;
    for (const auto& term : j.at(name)) {
      terms.emplace_back(term.at(0).get<std::string>(), term.at(1).get<double>());
    }
    t.terms[name] = std::move(terms);
  }
  return t;
}

CoefficientTable CoefficientTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read coefficient table " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

nlohmann::json CoefficientTable::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, terms] : this->terms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [metric, weight] : terms) arr.push_back({metric, weight});
    j[name] = arr;
  }
  return j;
}

double QmoodVector::get(const std::string& attribute) const {
  return values[attribute_index(attribute)];
}

nlohmann::json QmoodVector::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < values.size(); ++i) j[attribute_names()[i]] = values[i];
  return j;
}

QmoodVector QmoodVector::from_json(const nlohmann::json& j) {
  QmoodVector v;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    v.values[i] = j.at(attribute_names()[i]).get<double>();
  }
  return v;
}

QmoodVector qmood_attributes(const metrics::MetricVector& metrics,
                             const CoefficientTable& coeffs) {
  QmoodVector out;
  for (std::size_t i = 0; i < attribute_names().size(); ++i) {
    auto it = coeffs.terms.find(attribute_names()[i]);
    if (it == coeffs.terms.end()) continue;
    double sum = 0;
    for (const auto& [metric, weight] : it->second) sum += weight * metrics.get(metric);
    out.values[i] = sum;
  }
  return out;
}

std::optional<double> quality_improvement(double before, double after) {
  if (before == 0) return std::nullopt;
  return (after - before) / std::fabs(before) * 100.0;
}

std::array<std::optional<double>, 6> quality_improvement(const QmoodVector& before,
                                                         const QmoodVector& after) {
  std::array<std::optional<double>, 6> out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = quality_improvement(before.values[i], after.values[i]);
  }
  return out;
}

double improvement_rate(double m_before, double m_after) {
  if (m_before == 0) throw UndefinedRate();
  return (m_before - m_after) / m_before * 100.0;
}

}  // namespace refagent::quality
