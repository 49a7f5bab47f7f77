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

#ifndef CONSILIENCE_DATASET_HPP_
#define CONSILIENCE_DATASET_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "consilience/matrix.hpp"

namespace consilience {

inline constexpr std::size_t kMaxResponses = 5;
inline constexpr std::size_t kMinPairs = 3;
inline constexpr std::size_t kDefaultMaxRows = 1000;

// One observed/modeled pair.
struct Pair {
  double obs = 0.0;
  double mod = 0.0;

  bool operator==(const Pair&) const = default;
};

// Normalizer applied to every error term of a series.
enum class ScalarKind {
  kSampleStdDev,
  kInterquartileRange,
  kMean,
  kMedian,
};

// CLI spellings: stdev, iqr, mean, median.
std::string_view to_string(ScalarKind kind);
ScalarKind parse_scalar_kind(std::string_view text);

// The closed-form landmark values only hold for the sample standard
// deviation; reports flag everything else as "non-landmark".
inline bool is_landmark_kind(ScalarKind kind) {
  return kind == ScalarKind::kSampleStdDev;
}

// One response type, aligned on the owning Dataset's case ids. A slot is
// empty when the case has no observation for this response.
struct ResponseSeries {
  std::string name;
  std::vector<std::optional<Pair>> cases;
  // Per-case standard error of the observation. Empty when the input had
  // no `_se` column for this series.
  std::vector<std::optional<double>> standard_errors;

  bool has_standard_errors() const { return !standard_errors.empty(); }
  std::size_t n_complete() const;
  std::vector<Pair> usable_pairs() const;
  std::vector<double> observed() const;
  // Standard errors of the usable pairs, in the same order as
  // usable_pairs(). Missing entries come back as nullopt.
  std::vector<std::optional<double>> usable_standard_errors() const;
};

// 1..5 response series sharing one ordered case-id list, plus the
// pairwise case-matching flags and per-series importance weights used by
// joint scoring. Values are immutable once built; the with_* members
// return modified copies.
class Dataset {
 public:
  Dataset(std::vector<std::string> case_ids, std::vector<ResponseSeries> series);

  std::size_t size() const { return series_.size(); }
  std::size_t case_count() const { return case_ids_.size(); }
  const std::vector<std::string>& case_ids() const { return case_ids_; }
  const ResponseSeries& series(std::size_t i) const { return series_.at(i); }
  std::span<const ResponseSeries> all_series() const { return series_; }

  // Diagonal entries are unused and always report true.
  bool case_match(std::size_t i, std::size_t j) const;
  const SquareMatrix<char>& case_match_table() const { return case_match_; }
  double importance(std::size_t i) const { return importance_.at(i); }
  std::span<const double> importance() const { return importance_; }

  Dataset with_case_match(const SquareMatrix<char>& table) const;
  Dataset with_all_case_match(bool value) const;
  Dataset with_importance(std::vector<double> importance) const;

 private:
  std::vector<std::string> case_ids_;
  std::vector<ResponseSeries> series_;
  SquareMatrix<char> case_match_;
  std::vector<double> importance_;
};

struct ParseOptions {
  std::size_t max_rows = kDefaultMaxRows;
};

// Reads the CSV layout
//
//   case,<name>_obs,<name>_mod[,<name>_se][,...]
//
// Empty cells are missing values. A case with exactly one of obs/mod
// present is rejected, naming the case and series.
Dataset parse_dataset(std::istream& in, const ParseOptions& options = {});
Dataset parse_dataset_file(const std::string& path,
                           const ParseOptions& options = {});

// Writes the same layout back with round-trip precision.
void serialize_dataset(const Dataset& dataset, std::ostream& out);

// Number of case ids at which series i and j both have usable pairs.
std::size_t overlap_count(const Dataset& dataset, std::size_t i, std::size_t j);

}  // namespace consilience

#endif  // CONSILIENCE_DATASET_HPP_
