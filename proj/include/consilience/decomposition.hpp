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

#ifndef CONSILIENCE_DECOMPOSITION_HPP_
#define CONSILIENCE_DECOMPOSITION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "consilience/dataset.hpp"

namespace consilience {

// Least-squares regression of modeled on observed values. yp holds the
// projected value for each input pair.
struct ProjectionLine {
  double intercept = 0.0;
  double slope = 0.0;
  std::vector<double> yp;

  double operator()(double obs) const { return intercept + slope * obs; }
};

// Requires at least kMinPairs pairs and a non-constant observed series.
ProjectionLine fit_projection(std::span<const Pair> pairs);

// Normalizer for a series' errors. Mean and Median use the magnitude, so
// the scalar is always positive. Throws DegenerateError(kDegenerateScalar)
// if it would be zero.
double scalar_value(std::span<const double> yobs, ScalarKind kind);

// The four summary numbers of a partition, without per-pair detail.
struct PartitionStats {
  double mse_sys = 0.0;
  double mse_ran = 0.0;
  double mse_tot = 0.0;
  double c = 0.0;
};

// Split of total error (obs - mod) into a systematic part (obs - yp) and a
// random part (yp - mod), each divided by the scalar, squared and averaged
// over the n pairs.
struct ErrorPartition {
  ProjectionLine line;
  ScalarKind kind = ScalarKind::kSampleStdDev;
  double scalar = 0.0;
  std::vector<double> total_err;
  std::vector<double> sys_err;
  std::vector<double> ran_err;
  double mse_sys = 0.0;
  double mse_ran = 0.0;
  double mse_tot = 0.0;
  double c = 0.0;
  // Mean of scaled sys_err * ran_err. Zero in exact arithmetic whenever the
  // scalar is constant; reported as a numerical health check.
  double cross_product = 0.0;
  std::size_t n = 0;

  PartitionStats stats() const { return {mse_sys, mse_ran, mse_tot, c}; }
};

// C = -(mse_tot - 2) / 2.
inline double consilience_from_mse(double mse_tot) {
  return -(mse_tot - 2.0) / 2.0;
}

ErrorPartition decompose(std::span<const Pair> pairs, ScalarKind kind);

// Same as decompose() with a caller-supplied scalar. Null-model sampling
// reuses the observed series' scalar across replicates through this.
ErrorPartition decompose_with_scalar(std::span<const Pair> pairs,
                                     ScalarKind kind, double scalar);

}  // namespace consilience

#endif  // CONSILIENCE_DECOMPOSITION_HPP_
