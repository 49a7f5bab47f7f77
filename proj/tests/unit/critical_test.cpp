// Copyright 2026 The Consilience Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "consilience/critical.hpp"
#include "consilience/error.hpp"
#include "gtest/gtest.h"

namespace consilience {
namespace {

TEST(CriticalC, AnchorValues) {
  EXPECT_NEAR(critical_c(0.05, 1, 30), 0.36129529316338227, 1e-12);
  EXPECT_NEAR(critical_c(0.05, 3, 10), 0.36129529316338227, 1e-12);
  EXPECT_NEAR(critical_c(0.01, 4, 25), 0.2648871317618702, 1e-12);
  EXPECT_NEAR(critical_c(0.50, 1, 10), 0.15075811160438385, 1e-12);
}

TEST(CriticalC, HalfPoints) {
  for (const auto& level : kCriticalLevels) {
    EXPECT_NEAR(critical_c(level.alpha, 1, level.half_point), 0.5, 1e-14);
  }
}

TEST(CriticalC, TableShape) {
  for (std::size_t k = 1; k < kCriticalLevels.size(); ++k) {
    EXPECT_GT(kCriticalLevels[k].alpha, kCriticalLevels[k - 1].alpha);
    EXPECT_LT(kCriticalLevels[k].half_point, kCriticalLevels[k - 1].half_point);
  }
}

TEST(CriticalC, MonotoneInAlphaAndSampleSize) {
  double previous[kCriticalLevels.size()];
  bool first = true;
  for (double x = 3.0; x <= kMaxCalibratedSampleSize; x *= 1.07) {
    for (std::size_t k = 0; k < kCriticalLevels.size(); ++k) {
      const double c = critical_c_at(kCriticalLevels[k], x);
      if (k > 0) {
        EXPECT_LT(c, critical_c_at(kCriticalLevels[k - 1], x)) << x;
      }
      if (!first) EXPECT_LT(c, previous[k]);
      previous[k] = c;
    }
    first = false;
  }
  EXPECT_LT(critical_c(0.01, 1, 1e12), 0.01);
}

// Beyond the fitted range the tabulated curves stop being ordered.
TEST(CriticalC, CurvesCrossPastCalibratedRange) {
  EXPECT_GT(critical_c(0.10, 1, 5000), critical_c(0.05, 1, 5000));
}

TEST(CriticalC, RejectsUntabulatedAlphaAndTinySamples) {
  EXPECT_THROW(critical_c(0.2, 1, 30), UsageError);
  EXPECT_THROW(critical_c(0.05, 1, 1), UsageError);
  EXPECT_THROW(critical_c(0.05, 0.5, 1.5), UsageError);
  EXPECT_NO_THROW(critical_c(0.05, 1, 1.5));
  EXPECT_FALSE(in_calibrated_range(1.5));
  EXPECT_TRUE(in_calibrated_range(2.0));
  EXPECT_TRUE(in_calibrated_range(2500.0));
  EXPECT_FALSE(in_calibrated_range(4000.0));
  EXPECT_FALSE(find_critical_level(0.07).has_value());
  EXPECT_DOUBLE_EQ(find_critical_level(0.10)->half_point, 11.0);
}

TEST(SignificanceBracket, BracketsBetweenLevels) {
  // At M*effN = 30: C'(0.05) = 0.361, C'(0.01) is larger, C'(0.10) smaller.
  const auto b = significance_bracket(0.40, 1, 30);
  EXPECT_EQ(b.significant_at, 0.05);
  EXPECT_EQ(b.not_significant_at, 0.01);
  EXPECT_FALSE(b.near_alpha.has_value());
  EXPECT_TRUE(b.calibrated);

  const auto all = significance_bracket(0.99, 1, 30);
  EXPECT_EQ(all.significant_at, 0.01);
  EXPECT_FALSE(all.not_significant_at.has_value());

  const auto none = significance_bracket(-0.5, 1, 30);
  EXPECT_FALSE(none.significant_at.has_value());
  EXPECT_EQ(none.not_significant_at, 0.50);

  const auto near = significance_bracket(0.3633, 1, 30);
  EXPECT_EQ(near.near_alpha, 0.05);
  EXPECT_EQ(near.significant_at, 0.05);

  EXPECT_FALSE(significance_bracket(0.9, 1, 1.8).calibrated);
}

TEST(Nomogram, GridSpacingAndValues) {
  const auto rows = nomogram(2.0, 2000.0, 4);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NEAR(rows[0].m_effn, 2.0, 1e-12);
  EXPECT_NEAR(rows[1].m_effn, 20.0, 1e-12);
  EXPECT_NEAR(rows[3].m_effn, 2000.0, 1e-9);
  EXPECT_NEAR(rows[1].critical[1], critical_c(0.05, 1, 20), 1e-14);
}

}  // namespace
}  // namespace consilience
