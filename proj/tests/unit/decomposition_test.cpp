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
#include <random>
#include <vector>

#include "consilience/decomposition.hpp"
#include "consilience/error.hpp"
#include "gtest/gtest.h"
#include "support/oracles.hpp"

namespace consilience {
namespace {

std::vector<Pair> pairs_of(const std::vector<double>& obs,
                           const std::vector<double>& mod) {
  return oracle::zip(obs, mod);
}

TEST(FitProjection, HandWorkedExample) {
  // Sxx = 5, Sxy = 4.7 around means 2.5 and 2.5.
  const auto pairs = pairs_of({1, 2, 3, 4}, {1.1, 1.9, 3.2, 3.8});
  const auto line = fit_projection(pairs);
  EXPECT_NEAR(line.slope, 0.94, 1e-14);
  EXPECT_NEAR(line.intercept, 0.15, 1e-14);
  ASSERT_EQ(line.yp.size(), 4u);
  EXPECT_NEAR(line.yp[0], 1.09, 1e-14);
  EXPECT_NEAR(line(10.0), 9.55, 1e-13);
}

TEST(FitProjection, MatchesNormalEquations) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 40;
    const auto obs = oracle::random_series(rng, n, 5.0, 2.0);
    auto mod = oracle::random_series(rng, n, 0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) mod[k] += 0.7 * obs[k];
    const auto pairs = pairs_of(obs, mod);
    const auto line = fit_projection(pairs);
    const auto ref = oracle::normal_equations(pairs);
    EXPECT_NEAR(line.slope, static_cast<double>(ref.slope), 1e-11);
    EXPECT_NEAR(line.intercept, static_cast<double>(ref.intercept), 1e-10);
  }
}

TEST(FitProjection, RejectsTooFewOrFlatObservations) {
  try {
    fit_projection(pairs_of({1, 2}, {1, 2}));
    FAIL();
  } catch (const DegenerateError& e) {
    EXPECT_EQ(e.kind(), DegeneracyKind::kTooFewPairs);
  }
  try {
    fit_projection(pairs_of({3, 3, 3, 3}, {1, 2, 3, 4}));
    FAIL();
  } catch (const DegenerateError& e) {
    EXPECT_EQ(e.kind(), DegeneracyKind::kDegenerateObserved);
  }
}

TEST(ScalarValue, Kinds) {
  const std::vector<double> y = {1, 2, 3, 4, 10};
  EXPECT_NEAR(scalar_value(y, ScalarKind::kSampleStdDev),
              std::sqrt(50.0 / 4.0), 1e-14);
  EXPECT_DOUBLE_EQ(scalar_value(y, ScalarKind::kInterquartileRange), 2.0);
  EXPECT_DOUBLE_EQ(scalar_value(y, ScalarKind::kMean), 4.0);
  EXPECT_DOUBLE_EQ(scalar_value(y, ScalarKind::kMedian), 3.0);
  const std::vector<double> negative = {-1, -2, -6};
  EXPECT_DOUBLE_EQ(scalar_value(negative, ScalarKind::kMean), 3.0);
  const std::vector<double> centered = {-1, 0, 1};
  try {
    scalar_value(centered, ScalarKind::kMean);
    FAIL();
  } catch (const DegenerateError& e) {
    EXPECT_EQ(e.kind(), DegeneracyKind::kDegenerateScalar);
  }
}

TEST(Decompose, MatchesDirectDefinition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 60;
    const auto obs = oracle::random_series(rng, n, -3.0, 4.0);
    const auto mod = oracle::random_series(rng, n, -2.0, 3.0);
    const auto pairs = pairs_of(obs, mod);
    const auto p = decompose(pairs, ScalarKind::kSampleStdDev);
    const auto ref = oracle::partition(pairs);
    EXPECT_NEAR(p.mse_sys, static_cast<double>(ref.mse_sys), 1e-11);
    EXPECT_NEAR(p.mse_ran, static_cast<double>(ref.mse_ran), 1e-11);
    EXPECT_NEAR(p.mse_tot, static_cast<double>(ref.mse_tot), 1e-11);
    EXPECT_NEAR(p.c, static_cast<double>(ref.c), 1e-11);
    EXPECT_NEAR(p.mse_sys + p.mse_ran, p.mse_tot, 1e-11);
    EXPECT_NEAR(p.cross_product, 0.0, 1e-11);
    EXPECT_EQ(p.n, n);
  }
}

TEST(Decompose, LandmarksAtTen) {
  std::vector<double> obs = {3.1, -0.4, 2.2, 5.9, 1.0, 0.3, 4.4, 2.8, -1.7, 6.2};
  const double mean = oracle::average(obs);
  std::vector<double> flat(obs.size(), mean), inverse;
  for (double y : obs) inverse.push_back(2 * mean - y);

  const auto perfect = decompose(pairs_of(obs, obs), ScalarKind::kSampleStdDev);
  EXPECT_NEAR(perfect.c, 1.0, 1e-12);
  EXPECT_NEAR(perfect.mse_tot, 0.0, 1e-12);

  const auto mean_fit = decompose(pairs_of(obs, flat), ScalarKind::kSampleStdDev);
  EXPECT_NEAR(mean_fit.c, 0.55, 1e-12);
  EXPECT_NEAR(mean_fit.mse_tot, 0.9, 1e-12);
  EXPECT_NEAR(mean_fit.mse_sys, 0.9, 1e-12);
  EXPECT_NEAR(mean_fit.line.slope, 0.0, 1e-12);

  const auto inv = decompose(pairs_of(obs, inverse), ScalarKind::kSampleStdDev);
  EXPECT_NEAR(inv.c, -0.8, 1e-12);
  EXPECT_NEAR(inv.mse_tot, 3.6, 1e-12);
  EXPECT_NEAR(inv.line.slope, -1.0, 1e-12);
}

TEST(Decompose, ErrorTermsOfHandExample) {
  const auto pairs = pairs_of({1, 2, 3, 4}, {1.1, 1.9, 3.2, 3.8});
  const auto p = decompose(pairs, ScalarKind::kMean);
  EXPECT_DOUBLE_EQ(p.scalar, 2.5);
  ASSERT_EQ(p.total_err.size(), 4u);
  EXPECT_NEAR(p.total_err[0], 1.0 - 1.1, 1e-15);
  EXPECT_NEAR(p.sys_err[0], 1.0 - 1.09, 1e-14);
  EXPECT_NEAR(p.ran_err[0], 1.09 - 1.1, 1e-14);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(p.total_err[k], p.sys_err[k] + p.ran_err[k], 1e-15);
  }
  // Squared totals 0.01 + 0.01 + 0.04 + 0.04 over 4 pairs and 2.5^2.
  EXPECT_NEAR(p.mse_tot, 0.1 / 4.0 / 6.25, 1e-15);
}

TEST(Decompose, ExplicitScalarIsUsed) {
  const auto pairs = pairs_of({1, 2, 3, 4}, {2, 3, 4, 5});
  const auto p = decompose_with_scalar(pairs, ScalarKind::kSampleStdDev, 2.0);
  // Every error is -1, scaled to -0.5.
  EXPECT_NEAR(p.mse_tot, 0.25, 1e-15);
  EXPECT_NEAR(p.c, 0.875, 1e-15);
  EXPECT_NEAR(p.mse_ran, 0.0, 1e-15);
}

}  // namespace
}  // namespace consilience
