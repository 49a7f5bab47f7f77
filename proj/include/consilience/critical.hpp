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

#ifndef CONSILIENCE_CRITICAL_HPP_
#define CONSILIENCE_CRITICAL_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace consilience {

// One isopleth of the empirical critical-value family
//
//   C'(alpha) = 1 - X^n / (Xh^n + X^n),  X = log10(M * effN),
//
// with Xh = log10(half_point). half_point is the M * effN at which the
// curve crosses 0.5.
struct CriticalLevel {
  double alpha;
  double exponent;
  double half_point;
};

inline constexpr std::array<CriticalLevel, 5> kCriticalLevels = {{
    {0.01, 2.85, 25.0},
    {0.05, 2.50, 15.0},
    {0.10, 2.25, 11.0},
    {0.25, 1.90, 4.5},
    {0.50, 1.70, 2.3},
}};

// Range of M * effN the curves were fitted over (N from 2 to 500 with M up
// to 5). Past roughly 3270 the 0.05 and 0.10 curves cross, so values
// outside the range are flagged.
inline constexpr double kMinCalibratedSampleSize = 2.0;
inline constexpr double kMaxCalibratedSampleSize = 2500.0;

// Tabulated level for alpha, or nullopt.
std::optional<CriticalLevel> find_critical_level(double alpha);

// Critical C for a tabulated alpha. Throws UsageError for any other alpha
// (use a Monte Carlo null distribution instead) or when m * effn <= 1.
double critical_c(double alpha, double m, double effn);

// Same curve evaluated at a given product M * effN.
double critical_c_at(const CriticalLevel& level, double m_effn);

inline bool in_calibrated_range(double m_effn) {
  return m_effn >= kMinCalibratedSampleSize &&
         m_effn <= kMaxCalibratedSampleSize;
}

// Where an observed C falls among the tabulated levels.
//
// significant_at is the smallest tabulated alpha whose critical value the
// observation reaches (so p <= significant_at); not_significant_at is the
// largest tabulated alpha whose critical value it falls below (so
// p > not_significant_at). Either may be absent at the ends of the table.
struct SignificanceBracket {
  std::optional<double> significant_at;
  std::optional<double> not_significant_at;
  // Tabulated alpha whose critical value lies within kNearTolerance of the
  // observation, if any.
  std::optional<double> near_alpha;
  bool calibrated = true;

  static constexpr double kNearTolerance = 0.005;
};

SignificanceBracket significance_bracket(double c_observed, double m,
                                         double effn);

// Rows of (m_effn, C'(0.01), ..., C'(0.50)) on a log-spaced grid, for
// drawing the nomogram.
struct NomogramRow {
  double m_effn;
  std::array<double, kCriticalLevels.size()> critical;
};

std::vector<NomogramRow> nomogram(double lo = 2.0, double hi = 5000.0,
                                  std::size_t points = 200);

}  // namespace consilience

#endif  // CONSILIENCE_CRITICAL_HPP_
