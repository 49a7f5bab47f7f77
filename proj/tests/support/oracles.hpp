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

// Reference computations used only by the tests. Everything here is
// written the long way, in long double, without touching the library's
// numeric helpers, so the checks stay independent of the code under test.

#ifndef CONSILIENCE_TESTS_ORACLES_HPP_
#define CONSILIENCE_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "consilience/dataset.hpp"

namespace consilience::oracle {

struct Line {
  long double intercept;
  long double slope;
};

// Solves the 2x2 normal equations [n Sx; Sx Sxx][a b]' = [Sy Sxy]' by
// Cramer's rule.
inline Line normal_equations(const std::vector<Pair>& pairs) {
  long double n = pairs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pairs) {
    sx += p.obs;
    sy += p.mod;
    sxx += static_cast<long double>(p.obs) * p.obs;
    sxy += static_cast<long double>(p.obs) * p.mod;
  }
  const long double det = n * sxx - sx * sx;
  return {(sy * sxx - sx * sxy) / det, (n * sxy - sx * sy) / det};
}

inline long double sample_sd(const std::vector<double>& xs) {
  long double m = 0;
  for (double x : xs) m += x;
  m /= xs.size();
  long double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / (xs.size() - 1));
}

struct Partition {
  long double mse_sys, mse_ran, mse_tot, c;
};

// Direct evaluation of the definitions with the stdev scalar.
inline Partition partition(const std::vector<Pair>& pairs) {
  std::vector<double> xs;
  for (const auto& p : pairs) xs.push_back(p.obs);
  const long double s = sample_sd(xs);
  const Line line = normal_equations(pairs);
  long double sys = 0, ran = 0, tot = 0;
  for (const auto& p : pairs) {
    const long double yp = line.intercept + line.slope * p.obs;
    sys += (p.obs - yp) * (p.obs - yp);
    ran += (yp - p.mod) * (yp - p.mod);
    tot += (static_cast<long double>(p.obs) - p.mod) *
           (static_cast<long double>(p.obs) - p.mod);
  }
  const long double k = pairs.size() * s * s;
  return {sys / k, ran / k, tot / k, 1.0L - tot / k / 2.0L};
}

inline long double pearson_r2(const std::vector<double>& x,
                              const std::vector<double>& y) {
  long double n = x.size(), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double num = n * sxy - sx * sy;
  return num * num / ((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// Brute-force null distribution of W+ over all 2^n sign patterns, with
// ranks doubled to keep ties integral.
inline std::vector<std::uint64_t> wilcoxon_brute_counts(
    const std::vector<double>& ranks) {
  std::vector<long> doubled;
  long total = 0;
  for (double r : ranks) {
    doubled.push_back(std::lround(2 * r));
    total += doubled.back();
  }
  std::vector<std::uint64_t> counts(total + 1, 0);
  const std::uint64_t patterns = std::uint64_t{1} << ranks.size();
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    long w = 0;
    for (std::size_t k = 0; k < ranks.size(); ++k) {
      if (mask >> k & 1) w += doubled[k];
    }
    ++counts[w];
  }
  return counts;
}

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t n,
                                         double location = 0.0,
                                         double spread = 1.0) {
  std::normal_distribution<double> dist(location, spread);
  std::vector<double> xs(n);
  for (auto& x : xs) x = dist(rng);
  return xs;
}

inline std::vector<Pair> zip(const std::vector<double>& obs,
                             const std::vector<double>& mod) {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < obs.size(); ++i) out.push_back({obs[i], mod[i]});
  return out;
}

inline double average(const std::vector<double>& xs) {
  long double s = 0;
  for (double x : xs) s += x;
  return static_cast<double>(s / xs.size());
}

}  // namespace consilience::oracle

#endif  // CONSILIENCE_TESTS_ORACLES_HPP_
