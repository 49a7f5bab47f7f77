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

#ifndef CONSILIENCE_CONVENTIONAL_HPP_
#define CONSILIENCE_CONVENTIONAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "consilience/dataset.hpp"

namespace consilience {

// Classical measures reported next to C for comparison.

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  // "exact", "normal approximation", "F(1, n-1)", "perfect fit", ...
  std::string method;
};

// Squared Pearson correlation of observed and modeled values.
double r_squared(std::span<const Pair> pairs);

// Regression of d = mod - obs on obs through the origin, tested with
// F = SSreg / (SSres / (n - 1)) against F(1, n - 1). All-zero residuals
// report p = 1 with method "perfect fit".
struct ResidualRegression {
  TestResult test;
  double slope = 0.0;
};
ResidualRegression residual_regression_test(std::span<const Pair> pairs);

inline constexpr std::size_t kWilcoxonExactLimit = 20;

// Wilcoxon signed-rank test of H0: median(mod - obs) = 0. Zero
// differences are dropped; tied |d| share average ranks. W is the smaller
// of the positive and negative rank sums. Exact two-sided p for up to
// kWilcoxonExactLimit nonzero differences, normal approximation with tie
// and continuity corrections beyond.
struct WilcoxonResult {
  TestResult test;
  double w_plus = 0.0;
  double w_minus = 0.0;
  std::size_t n_used = 0;
};
WilcoxonResult wilcoxon_signed_rank(std::span<const Pair> pairs);

// Average ranks (1-based) of |d| for nonzero d, in input order.
std::vector<double> signed_rank_magnitudes(std::span<const double> abs_d);

// Null distribution of W+ for the given ranks, indexed by 2 * W+ (ranks
// may be half-integers). Entry k counts the sign patterns out of 2^n with
// 2 * W+ == k.
std::vector<std::uint64_t> wilcoxon_exact_counts(std::span<const double> ranks);

// Two-sided p-values for a given W = min(W+, W-) over ranks.
double wilcoxon_exact_p(std::span<const double> ranks, double w);
double wilcoxon_normal_p(std::span<const double> ranks, double w);

struct MssdResult {
  double mssd = 0.0;
  double rmssd = 0.0;
};

// Mean of ((obs - mod) / se)^2 and its root. se must be positive.
MssdResult mssd(std::span<const Pair> pairs, std::span<const double> se);

}  // namespace consilience

#endif  // CONSILIENCE_CONVENTIONAL_HPP_
