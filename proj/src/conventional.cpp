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

#include "consilience/conventional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "consilience/error.hpp"
#include "consilience/numeric.hpp"
#include "consilience/special_functions.hpp"
#include "consilience/weighting.hpp"

namespace consilience {

namespace {

void require_min_pairs(std::size_t n, const char* what) {
  if (n < kMinPairs) {
    throw DegenerateError(DegeneracyKind::kTooFewPairs,
                          std::string(what) + " needs at least " +
                              std::to_string(kMinPairs) + " pairs, got " +
                              std::to_string(n));
  }
}

}  // namespace

double r_squared(std::span<const Pair> pairs) {
  require_min_pairs(pairs.size(), "R^2");
  std::vector<double> x, y;
  for (const auto& p : pairs) {
    x.push_back(p.obs);
    y.push_back(p.mod);
  }
  if (has_no_spread(x) || has_no_spread(y)) {
    throw DegenerateError(DegeneracyKind::kDegenerateSeries,
                          "R^2 is undefined when either series is constant");
  }
  return pearson_r_squared(x, y);
}

ResidualRegression residual_regression_test(std::span<const Pair> pairs) {
  require_min_pairs(pairs.size(), "residual regression");
  CompensatedSum syy, sdy, sdd;
  bool all_zero = true;
  for (const auto& p : pairs) {
    const double d = p.mod - p.obs;
    all_zero = all_zero && d == 0.0;
    syy += p.obs * p.obs;
    sdy += d * p.obs;
    sdd += d * d;
  }
  ResidualRegression out;
  if (all_zero) {
    out.test = {0.0, 1.0, "perfect fit"};
    return out;
  }
  if (!(syy.value() > 0.0)) {
    throw DegenerateError(DegeneracyKind::kDegenerateSeries,
                          "residual regression needs a nonzero observed series");
  }
  const double df = static_cast<double>(pairs.size() - 1);
  out.slope = sdy.value() / syy.value();
  const double ss_reg = sdy.value() * sdy.value() / syy.value();
  const double ss_res = std::max(0.0, sdd.value() - ss_reg);
  if (ss_res == 0.0) {
    out.test = {std::numeric_limits<double>::infinity(), 0.0, "F(1, n-1)"};
    return out;
  }
  const double f = ss_reg / (ss_res / df);
  out.test = {f, f_upper_tail(f, 1.0, df), "F(1, n-1)"};
  return out;
}

std::vector<double> signed_rank_magnitudes(std::span<const double> abs_d) {
  const std::size_t n = abs_d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return abs_d[a] < abs_d[b];
  });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && abs_d[order[j + 1]] == abs_d[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::vector<std::uint64_t> wilcoxon_exact_counts(std::span<const double> ranks) {
  // Work in doubled ranks so ties (half-integers) stay integral.
  std::size_t total = 0;
  std::vector<std::size_t> doubled;
  for (double r : ranks) {
    doubled.push_back(static_cast<std::size_t>(std::lround(2.0 * r)));
    total += doubled.back();
  }
  std::vector<std::uint64_t> counts(total + 1, 0);
  counts[0] = 1;
  std::size_t reach = 0;
  for (std::size_t r2 : doubled) {
    reach += r2;
    for (std::size_t k = reach; k >= r2; --k) {
      counts[k] += counts[k - r2];
      if (k == r2) break;
    }
  }
  return counts;
}

double wilcoxon_exact_p(std::span<const double> ranks, double w) {
  const auto counts = wilcoxon_exact_counts(ranks);
  const auto limit = static_cast<std::size_t>(std::lround(2.0 * w));
  std::uint64_t tail = 0;
  std::uint64_t all = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    all += counts[k];
    if (k <= limit) tail += counts[k];
  }
  return std::min(1.0, 2.0 * static_cast<double>(tail) / static_cast<double>(all));
}

double wilcoxon_normal_p(std::span<const double> ranks, double w) {
  const auto n = static_cast<double>(ranks.size());
  const double mu = n * (n + 1.0) / 4.0;
  double tie_term = 0.0;
  {
    std::vector<double> sorted(ranks.begin(), ranks.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const auto t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
  }
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  // w <= mu by construction; the +0.5 moves it toward the mean.
  const double z = std::min(0.0, (w - mu + 0.5) / std::sqrt(var));
  return std::min(1.0, 2.0 * normal_cdf(z));
}

WilcoxonResult wilcoxon_signed_rank(std::span<const Pair> pairs) {
  std::vector<double> d;
  for (const auto& p : pairs) {
    const double diff = p.mod - p.obs;
    if (diff != 0.0) d.push_back(diff);
  }
  WilcoxonResult out;
  out.n_used = d.size();
  if (d.empty()) {
    out.test = {0.0, 1.0, "no signal"};
    return out;
  }
  require_min_pairs(d.size(), "Wilcoxon signed-rank test (nonzero differences)");

  std::vector<double> abs_d(d.size());
  std::transform(d.begin(), d.end(), abs_d.begin(),
                 [](double x) { return std::fabs(x); });
  const auto ranks = signed_rank_magnitudes(abs_d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    (d[k] > 0 ? out.w_plus : out.w_minus) += ranks[k];
  }
  const double w = std::min(out.w_plus, out.w_minus);
  if (d.size() <= kWilcoxonExactLimit) {
    out.test = {w, wilcoxon_exact_p(ranks, w), "exact"};
  } else {
    out.test = {w, wilcoxon_normal_p(ranks, w), "normal approximation"};
  }
  return out;
}

MssdResult mssd(std::span<const Pair> pairs, std::span<const double> se) {
  if (se.size() != pairs.size()) {
    throw DegenerateError(DegeneracyKind::kDegenerateSeries,
                          "MSSD needs one standard error per pair");
  }
  if (pairs.empty()) {
    throw DegenerateError(DegeneracyKind::kTooFewPairs, "MSSD of no pairs");
  }
  CompensatedSum s;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!(se[k] > 0.0)) {
      throw DegenerateError(DegeneracyKind::kDegenerateSeries,
                            "MSSD needs strictly positive standard errors");
    }
    const double z = (pairs[k].obs - pairs[k].mod) / se[k];
    s += z * z;
  }
  MssdResult out;
  out.mssd = s.value() / static_cast<double>(pairs.size());
  out.rmssd = std::sqrt(out.mssd);
  return out;
}

}  // namespace consilience
