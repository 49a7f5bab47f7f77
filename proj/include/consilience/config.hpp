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

#ifndef CONSILIENCE_CONFIG_HPP_
#define CONSILIENCE_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "consilience/dataset.hpp"
#include "consilience/matrix.hpp"

namespace consilience {

// What to do when two case-matched series share fewer than kMinPairs cases.
enum class OverlapPolicy {
  kReject,     // raise DegenerateError(kInsufficientOverlap)
  kSurrogate,  // fall back to the unmatched expectation 1/(min(Ni,Nj)-1)
};

std::string_view to_string(OverlapPolicy policy);

// Sidecar JSON configuration. Every field is optional in the file:
//
//   {
//     "scalar": "stdev",
//     "case_match": true | [[true, false, ...], ...],
//     "importance": [1, 1, 2],
//     "alphas": [0.01, 0.05],
//     "seed": 12345,
//     "replicates": 1000,
//     "max_rows": 1000,
//     "insufficient_overlap": "surrogate" | "error"
//   }
struct AnalysisConfig {
  ScalarKind scalar = ScalarKind::kSampleStdDev;
  // Either a single flag for every off-diagonal pair or a full table.
  std::optional<bool> case_match_all;
  std::optional<SquareMatrix<char>> case_match;
  std::vector<double> importance;
  std::vector<double> alphas = {0.01, 0.05, 0.10, 0.25, 0.50};
  std::optional<std::uint64_t> seed;
  std::size_t replicates = 1000;
  std::size_t max_rows = kDefaultMaxRows;
  OverlapPolicy overlap_policy = OverlapPolicy::kSurrogate;
};

AnalysisConfig parse_config(std::istream& in);
AnalysisConfig parse_config_file(const std::string& path);

// Canonical JSON text of a config, used for report provenance.
std::string config_to_json(const AnalysisConfig& config);

// Applies case matching and importance weights to a dataset.
Dataset apply_config(const Dataset& dataset, const AnalysisConfig& config);

}  // namespace consilience

#endif  // CONSILIENCE_CONFIG_HPP_
