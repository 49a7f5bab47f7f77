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

#include "consilience/nullmodels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "consilience/error.hpp"
#include "consilience/numeric.hpp"
#include "consilience/special_functions.hpp"
#include "consilience/weighting.hpp"

namespace consilience {

std::string_view to_string(NullKind kind) {
  return kind == NullKind::kRandMix ? "randmix" : "randnorm";
}

NullKind parse_null_kind(std::string_view text) {
  if (text == "randmix") return NullKind::kRandMix;
  if (text == "randnorm") return NullKind::kRandNorm;
  throw UsageError("unknown null model '" + std::string(text) +
                   "' (expected randmix or randnorm)");
}

void validate(const NullSpec& spec) {
  if (spec.replicates == 0) throw UsageError("replicates must be at least 1");
  const auto& c = spec.clip;
  // lo == hi is allowed; it pins every draw to one quantile.
  if (!(c.lo > 0.0 && c.lo <= c.hi && c.hi < 1.0)) {
    throw UsageError("normal clip must satisfy 0 < lo <= hi < 1");
  }
}

namespace {

void require_series(std::span<const double> yobs) {
  if (yobs.size() < kMinPairs) {
    throw DegenerateError(DegeneracyKind::kTooFewPairs,
                          "null models need at least " +
                              std::to_string(kMinPairs) + " observed values");
  }
}

// Runs body(r) for r in [0, count) on up to `threads` workers. Each index
// is handled exactly once; the first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(
                             threads, static_cast<unsigned>(
                                          std::max<std::size_t>(1, count))));
  if (threads == 1) {
    for (std::size_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t r = t; r < count; r += threads) body(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> draw(NullKind kind, std::span<const double> yobs,
                         StreamRng& rng, const NormalClip& clip) {
  return kind == NullKind::kRandMix ? randmix_replicate(yobs, rng)
                                    : randnorm_replicate(yobs, rng, clip);
}

std::vector<Pair> pair_up(std::span<const double> yobs,
                          std::span<const double> ymod) {
  std::vector<Pair> pairs(yobs.size());
  for (std::size_t k = 0; k < yobs.size(); ++k) pairs[k] = {yobs[k], ymod[k]};
  return pairs;
}

}  // namespace

std::vector<double> randmix_replicate(std::span<const double> yobs,
                                      StreamRng& rng) {
  require_series(yobs);
  std::vector<double> out(yobs.begin(), yobs.end());
  for (std::size_t i = out.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(out[i], out[j]);
  }
  return out;
}

std::vector<double> randnorm_replicate(std::span<const double> yobs,
                                       StreamRng& rng,
                                       const NormalClip& clip) {
  require_series(yobs);
  if (has_no_spread(yobs)) {
    throw DegenerateError(DegeneracyKind::kDegenerateObserved,
                          "observed values have zero variance");
  }
  const double mu = mean(yobs);
  const double sd = std::sqrt(sum_squared_deviations(yobs) /
                              static_cast<double>(yobs.size() - 1));
  std::vector<double> out(yobs.size());
  for (auto& y : out) {
    const double u = clip.mode == ClipMode::kTruncate
                         ? rng.uniform_closed(clip.lo, clip.hi)
                         : std::clamp(rng.uniform(), clip.lo, clip.hi);
    y = mu + sd * normal_quantile(u);
  }
  return out;
}

NullDistribution::NullDistribution(std::vector<double> values)
    : c_values_(std::move(values)) {
  std::sort(c_values_.begin(), c_values_.end());
  mean_c_ = c_values_.empty() ? std::nan("") : mean(c_values_);
}

double NullDistribution::quantile(double p) const {
  return quantile_sorted(c_values_, p);
}

std::vector<PartitionStats> sample_series_null(std::span<const double> yobs,
                                               const NullSpec& spec,
                                               ScalarKind kind) {
  validate(spec);
  require_series(yobs);
  const double scalar = scalar_value(yobs, kind);
  std::vector<PartitionStats> out(spec.replicates);
  parallel_for(spec.replicates, spec.threads, [&](std::size_t r) {
    StreamRng rng(spec.seed, r);
    const auto ymod = draw(spec.kind, yobs, rng, spec.clip);
    out[r] = decompose_with_scalar(pair_up(yobs, ymod), kind, scalar).stats();
  });
  return out;
}

NullDistribution null_distribution(const Dataset& dataset,
                                   const NullSpec& spec, ScalarKind kind,
                                   OverlapPolicy policy) {
  validate(spec);
  const std::size_t m = dataset.size();
  std::vector<std::vector<double>> observed(m);
  std::vector<double> scalars(m);
  for (std::size_t i = 0; i < m; ++i) {
    observed[i] = dataset.series(i).observed();
    require_series(observed[i]);
    scalars[i] = scalar_value(observed[i], kind);
  }
  // Weights depend on the observed series only, so they are shared by
  // every replicate.
  const auto weights = weight_table(dataset, policy).w_final;

  std::vector<double> values(spec.replicates);
  parallel_for(spec.replicates, spec.threads, [&](std::size_t r) {
    StreamRng rng(spec.seed, r);
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto ymod = draw(spec.kind, observed[i], rng, spec.clip);
      c[i] = decompose_with_scalar(pair_up(observed[i], ymod), kind,
                                   scalars[i])
                 .c;
    }
    values[r] = m == 1 ? c[0] : joint_c(c, weights);
  });
  return NullDistribution(std::move(values));
}

RandMixMeans enumerate_randmix(std::span<const double> yobs, ScalarKind kind) {
  require_series(yobs);
  if (yobs.size() > kMaxEnumerationSize) {
    throw UsageError("exhaustive enumeration is limited to n <= " +
                     std::to_string(kMaxEnumerationSize) + " (" +
                     std::to_string(yobs.size()) + "! pairings requested)");
  }
  const double scalar = scalar_value(yobs, kind);

  RandMixMeans out;
  {
    std::vector<double> sorted(yobs.begin(), yobs.end());
    std::sort(sorted.begin(), sorted.end());
    out.has_ties =
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  }

  std::vector<std::size_t> perm(yobs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> ymod(yobs.size());
  CompensatedSum sys, ran, tot, c, rsq;
  std::size_t count = 0;
  do {
    for (std::size_t k = 0; k < perm.size(); ++k) ymod[k] = yobs[perm[k]];
    const auto part = decompose_with_scalar(pair_up(yobs, ymod), kind, scalar);
    sys += part.mse_sys;
    ran += part.mse_ran;
    tot += part.mse_tot;
    c += part.c;
    rsq += pearson_r_squared(yobs, ymod);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));

  const auto n = static_cast<double>(count);
  out.means = {sys.value() / n, ran.value() / n, tot.value() / n,
               c.value() / n};
  out.mean_r_squared = rsq.value() / n;
  out.permutations = count;
  return out;
}

}  // namespace consilience
