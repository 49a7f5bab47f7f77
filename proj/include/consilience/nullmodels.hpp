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

#ifndef CONSILIENCE_NULLMODELS_HPP_
#define CONSILIENCE_NULLMODELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "consilience/config.hpp"
#include "consilience/dataset.hpp"
#include "consilience/decomposition.hpp"
#include "consilience/random.hpp"

namespace consilience {

enum class NullKind {
  kRandMix,   // observed values randomly re-paired with themselves
  kRandNorm,  // normal draws matching the observed mean and stdev
};

std::string_view to_string(NullKind kind);
NullKind parse_null_kind(std::string_view text);

// How the uniform argument of the inverse normal is kept inside [lo, hi].
enum class ClipMode {
  kClamp,     // draw on [0, 1) and clamp into [lo, hi]
  kTruncate,  // draw uniformly on [lo, hi]
};

struct NormalClip {
  double lo = 0.001;
  double hi = 0.999;
  ClipMode mode = ClipMode::kClamp;
};

struct NullSpec {
  NullKind kind = NullKind::kRandNorm;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  NormalClip clip;
  // Worker threads for replicate evaluation. Results do not depend on it.
  unsigned threads = 1;
};

// Throws UsageError if replicates or the clip bounds are out of range.
void validate(const NullSpec& spec);

// Uniformly random permutation of yobs (Fisher-Yates).
std::vector<double> randmix_replicate(std::span<const double> yobs,
                                      StreamRng& rng);

// mean(yobs) + stdev(yobs) * Phi^-1(u_i), u_i restricted to [lo, hi].
std::vector<double> randnorm_replicate(std::span<const double> yobs,
                                       StreamRng& rng,
                                       const NormalClip& clip = {});

// Sorted null values of C (M = 1) or joint C (M > 1).
class NullDistribution {
 public:
  NullDistribution() = default;
  explicit NullDistribution(std::vector<double> values);

  std::span<const double> c_values() const { return c_values_; }
  std::size_t size() const { return c_values_.size(); }
  double mean_c() const { return mean_c_; }
  // Type-7 quantile.
  double quantile(double p) const;

 private:
  std::vector<double> c_values_;
  double mean_c_ = 0.0;
};

// Per-replicate partitions of one observed series against the null,
// in replicate order. Replicate r draws from StreamRng(seed, r).
std::vector<PartitionStats> sample_series_null(std::span<const double> yobs,
                                               const NullSpec& spec,
                                               ScalarKind kind);

// Replaces every series' modeled values with a fresh null draw in each
// replicate, reruns decomposition and joint weighting, and collects C or
// joint C. Within a replicate the series are drawn in order from the one
// StreamRng(seed, r).
NullDistribution null_distribution(
    const Dataset& dataset, const NullSpec& spec, ScalarKind kind,
    OverlapPolicy policy = OverlapPolicy::kReject);

inline constexpr std::size_t kMaxEnumerationSize = 8;

struct RandMixMeans {
  PartitionStats means;
  // Mean R^2 between yobs and each permutation of itself.
  double mean_r_squared = 0.0;
  std::size_t permutations = 0;
  bool has_ties = false;
};

// Exact means over all n! re-pairings of yobs with itself (3 <= n <= 8).
RandMixMeans enumerate_randmix(std::span<const double> yobs, ScalarKind kind);

}  // namespace consilience

#endif  // CONSILIENCE_NULLMODELS_HPP_
