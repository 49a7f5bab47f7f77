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

#include "consilience/critical.hpp"

#include <cmath>
#include <string>

#include "consilience/error.hpp"

namespace consilience {

std::optional<CriticalLevel> find_critical_level(double alpha) {
  for (const auto& level : kCriticalLevels) {
    if (std::fabs(level.alpha - alpha) < 1e-12) return level;
  }
  return std::nullopt;
}

double critical_c_at(const CriticalLevel& level, double m_effn) {
  if (!(m_effn > 1.0)) {
    throw UsageError("critical C needs M * effN > 1, got " +
                     std::to_string(m_effn));
  }
  const double x = std::log10(m_effn);
  const double xh = std::log10(level.half_point);
  const double xn = std::pow(x, level.exponent);
  return 1.0 - xn / (std::pow(xh, level.exponent) + xn);
}

double critical_c(double alpha, double m, double effn) {
  const auto level = find_critical_level(alpha);
  if (!level) {
    throw UsageError("alpha " + std::to_string(alpha) +
                     " is not tabulated (0.01, 0.05, 0.10, 0.25, 0.50); "
                     "use a null distribution for other levels");
  }
  return critical_c_at(*level, m * effn);
}

SignificanceBracket significance_bracket(double c_observed, double m,
                                         double effn) {
  const double m_effn = m * effn;
  SignificanceBracket out;
  out.calibrated = in_calibrated_range(m_effn);
  double nearest = SignificanceBracket::kNearTolerance;
  // Levels run from the strictest (largest C') to the loosest.
  for (const auto& level : kCriticalLevels) {
    const double crit = critical_c_at(level, m_effn);
    if (c_observed >= crit) {
      if (!out.significant_at) out.significant_at = level.alpha;
    } else {
      out.not_significant_at = level.alpha;
    }
    const double gap = std::fabs(c_observed - crit);
    if (gap <= nearest) {
      nearest = gap;
      out.near_alpha = level.alpha;
    }
  }
  return out;
}

std::vector<NomogramRow> nomogram(double lo, double hi, std::size_t points) {
  std::vector<NomogramRow> rows;
  rows.reserve(points);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t k = 0; k < points; ++k) {
    const double t =
        points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
    NomogramRow row{std::pow(10.0, a + (b - a) * t), {}};
    for (std::size_t l = 0; l < kCriticalLevels.size(); ++l) {
      row.critical[l] = critical_c_at(kCriticalLevels[l], row.m_effn);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace consilience
