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

#ifndef CONSILIENCE_REPORT_HPP_
#define CONSILIENCE_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "consilience/config.hpp"
#include "consilience/conventional.hpp"
#include "consilience/critical.hpp"
#include "consilience/dataset.hpp"
#include "consilience/decomposition.hpp"
#include "consilience/nullmodels.hpp"
#include "consilience/weighting.hpp"
#include "json.hpp"

namespace consilience {

inline constexpr std::string_view kVersion = "0.1.0";

// FNV-1a 64-bit digest of the raw input bytes, as "fnv1a64:<16 hex>".
std::string input_digest(std::string_view bytes);

struct CriticalValue {
  double alpha;
  double critical_c;
};

struct Assessment {
  double m = 1.0;
  double effn = 0.0;
  std::vector<CriticalValue> critical;
  std::optional<SignificanceBracket> bracket;
};

struct SeriesReport {
  std::string name;
  std::vector<std::string> case_ids;
  std::vector<Pair> pairs;
  ErrorPartition partition;
  std::optional<double> r_squared;
  // mse_sys / mse_tot and mse_ran / mse_tot; absent for a perfect fit.
  std::optional<double> sys_share;
  std::optional<double> ran_share;
  Assessment assessment;
};

struct AnalysisReport {
  std::string input_digest;
  AnalysisConfig config;
  std::optional<std::uint64_t> seed;
  std::vector<SeriesReport> series;
  WeightTable weights;
  std::vector<double> importance;
  SquareMatrix<char> case_match;
  double joint_c = 0.0;
  Assessment joint;
  std::vector<std::string> warnings;
};

// Runs decomposition on every series, joint weighting, and the critical
// curve read-off. The dataset must already carry the config's case
// matching and importance weights (see apply_config).
AnalysisReport analyze(const Dataset& dataset, const AnalysisConfig& config,
                       std::string digest);

nlohmann::json to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

// Conventional tests next to C, per series.
struct SeriesComparison {
  std::string name;
  std::size_t n = 0;
  double c = 0.0;
  std::optional<double> r_squared;
  ResidualRegression residual_regression;
  WilcoxonResult wilcoxon;
  std::optional<MssdResult> mssd;
  std::string mssd_note;
};

struct CompareReport {
  std::string input_digest;
  ScalarKind scalar = ScalarKind::kSampleStdDev;
  std::vector<SeriesComparison> series;
};

CompareReport compare(const Dataset& dataset, ScalarKind scalar,
                      std::string digest);
nlohmann::json to_json(const CompareReport& report);
std::string to_text(const CompareReport& report);

// Summary of a null run.
struct NullReport {
  std::string input_digest;
  NullSpec spec;
  std::string seed_source;
  ScalarKind scalar = ScalarKind::kSampleStdDev;
  std::size_t m = 1;
  double effn = 0.0;
  NullDistribution distribution;
  double observed_c = 0.0;
};

nlohmann::json to_json(const NullReport& report);
std::string null_values_csv(const NullDistribution& distribution);

// printf("%.6g").
std::string format6(double x);

}  // namespace consilience

#endif  // CONSILIENCE_REPORT_HPP_
