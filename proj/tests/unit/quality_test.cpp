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

#include <gtest/gtest.h>

#include <random>

#include "refagent/error.h"
#include "refagent/quality/qmood.h"

namespace refagent::quality {
namespace {

using metrics::MetricVector;

MetricVector random_vector(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-5, 50);
  MetricVector v;
  for (const auto& name : MetricVector::names()) v.at(name) = d(rng);
  return v;
}

TEST(QmoodTest, ZeroMetricsGiveZeroAttributes) {
  QmoodVector q = qmood_attributes(MetricVector{});
  for (double v : q.values) EXPECT_EQ(v, 0);
}

TEST(QmoodTest, ReusabilitySubstitution) {
  MetricVector m;
  m.DCC = 2;
  m.CAM = 0.5;
  m.CIS = 4;
  m.DSC = 10;
  EXPECT_DOUBLE_EQ(qmood_attributes(m).get("Reusability"), 6.625);
}

TEST(QmoodTest, EveryRowByHand) {
  MetricVector m;
  m.DSC = 12;
  m.NOH = 2;
  m.ANA = 1.5;
  m.DAM = 0.8;
  m.DCC = 3;
  m.CAM = 0.4;
  m.MOA = 1;
  m.MFA = 0.25;
  m.NOP = 5;
  m.CIS = 6;
  m.NOM = 7;
  QmoodVector q = qmood_attributes(m);
  EXPECT_NEAR(q.get("Reusability"), -0.75 + 0.1 + 3 + 6, 1e-12);
  EXPECT_NEAR(q.get("Flexibility"), 0.2 - 0.75 + 0.5 + 2.5, 1e-12);
  EXPECT_NEAR(q.get("Understandability"),
              0.33 * (-1.5 + 0.8 - 3 + 0.4 - 5 - 7 - 12), 1e-12);
  EXPECT_NEAR(q.get("Effectiveness"), 0.2 * (1.5 + 0.8 + 1 + 0.25 + 5), 1e-12);
  EXPECT_NEAR(q.get("Extendibility"), 0.5 * (1.5 - 3 + 0.25 + 5), 1e-12);
  EXPECT_NEAR(q.get("Functionality"), 0.12 * 1 + 0.22 * (5 + 6 + 12 + 2), 1e-12);

  // The printed table counts CAM, NOP, NOM and DSC twice in Understandability.
  QmoodVector p = qmood_attributes(m, CoefficientTable::printed());
  EXPECT_NEAR(p.get("Understandability"),
              -0.33 * 1.5 + 0.33 * 0.8 - 0.33 * 3 + 0.66 * 0.4 - 0.66 * 5 - 0.66 * 7 - 0.66 * 12,
              1e-12);
  EXPECT_DOUBLE_EQ(p.get("Reusability"), q.get("Reusability"));
}

TEST(QmoodProperty, Linearity) {
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    MetricVector a = random_vector(rng);
    MetricVector b = random_vector(rng);
    QmoodVector sum = qmood_attributes(a + b);
    QmoodVector qa = qmood_attributes(a);
    QmoodVector qb = qmood_attributes(b);
    QmoodVector doubled = qmood_attributes(a * 2);
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_NEAR(sum.values[k], qa.values[k] + qb.values[k], 1e-9);
      EXPECT_NEAR(doubled.values[k], 2 * qa.values[k], 1e-9);
    }
  }
}

TEST(QmoodTest, UnknownMetricName) {
  CoefficientTable t = CoefficientTable::standard();
  t.terms["Extendibility"].push_back({"NOS", 0.5});
  EXPECT_THROW(qmood_attributes(MetricVector{}, t), UnknownMetricName);
}

TEST(QmoodTest, TableJsonRoundTrip) {
  CoefficientTable t = CoefficientTable::printed();
  CoefficientTable back = CoefficientTable::from_json(t.to_json());
  EXPECT_EQ(back.terms, t.terms);
  nlohmann::json missing = t.to_json();
  missing.erase("Functionality");
  EXPECT_THROW(CoefficientTable::from_json(missing), ConfigError);
}

TEST(QualityImprovementTest, Examples) {
  EXPECT_NEAR(*quality_improvement(4.0, 4.4), 10, 1e-12);
  EXPECT_NEAR(*quality_improvement(-2, -1), 50, 1e-12);
  EXPECT_FALSE(quality_improvement(0, 3).has_value());
}

TEST(QualityImprovementProperty, IdentityIsZero) {
  std::mt19937 rng(2);
  for (int i = 0; i < 100; ++i) {
    QmoodVector q = qmood_attributes(random_vector(rng));
    for (const auto& qi : quality_improvement(q, q)) {
      if (qi) EXPECT_EQ(*qi, 0);
    }
  }
}

TEST(ImprovementRateTest, Examples) {
  EXPECT_DOUBLE_EQ(improvement_rate(40, 19), 52.5);
  EXPECT_DOUBLE_EQ(improvement_rate(10, 12), -20);
  EXPECT_THROW(improvement_rate(0, 5), UndefinedRate);
}

TEST(ImprovementRateProperty, SwapIdentity) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(0.5, 100);
  for (int i = 0; i < 200; ++i) {
    double a = d(rng);
    double b = d(rng);
    double relative = (b - a) / a * 100;
    EXPECT_NEAR(improvement_rate(a, b), -relative, 1e-9);
  }
}

}  // namespace
}  // namespace refagent::quality
