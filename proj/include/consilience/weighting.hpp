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

#ifndef CONSILIENCE_WEIGHTING_HPP_
#define CONSILIENCE_WEIGHTING_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "consilience/config.hpp"
#include "consilience/dataset.hpp"
#include "consilience/matrix.hpp"

namespace consilience {

// Squared Pearson correlation of two equally long samples.
double pearson_r_squared(std::span<const double> x, std::span<const double> y);

struct RsqMatrix {
  SquareMatrix<double> rsq;
  // Human-readable notes for pairs that fell back to the surrogate value
  // under OverlapPolicy::kSurrogate.
  std::vector<std::string> warnings;
};

// Pairwise R^2 of the observed series. Case-matched pairs use the
// overlapping cases; unmatched pairs use 1/(min(Ni, Nj) - 1), the
// expectation under random association. Diagonal is 1.
RsqMatrix rsq_matrix(const Dataset& dataset,
                     OverlapPolicy policy = OverlapPolicy::kReject);

struct CovarianceWeights {
  std::vector<double> w;
  // True if the raw formula produced a negative weight that was clamped
  // to zero before renormalizing.
  bool clamped = false;
};

// Raw covariance weights straight from the formula (may be negative for
// R^2 tables that no real data could produce).
std::vector<double> raw_covariance_weights(const SquareMatrix<double>& rsq);

// Covariance weights: 1 for M = 1, 1/2 each for M = 2, otherwise
//
//   W_i = 1/M [1 + (M-2)/(M-1) (sum_excl / (M-2) - sum_incl / 2)]
//
// where sum_incl adds the M-1 off-diagonal R^2 entries involving i and
// sum_excl the (M-1)(M-2)/2 entries that do not.
CovarianceWeights covariance_weights(const SquareMatrix<double>& rsq);

struct EffectiveN {
  SquareMatrix<double> pair;   // effN_ij; diagonal holds N_i
  std::vector<double> series;  // effN_i
  double effn = 0.0;
};

// effN_ij is the overlap count for case-matched pairs and min(Ni, Nj)
// otherwise. effN_i averages row i off the diagonal; effN averages all
// i < j. For M = 1 everything collapses to N.
EffectiveN effn_values(const Dataset& dataset);

// W_i * effN_i * importance_i, normalized to sum to 1.
std::vector<double> final_weights(std::span<const double> w_cov,
                                  std::span<const double> effn_series,
                                  std::span<const double> importance);

double joint_c(std::span<const double> component_c,
               std::span<const double> weights);

// Everything above for one dataset.
struct WeightTable {
  SquareMatrix<double> rsq;
  SquareMatrix<double> effn_pair;
  std::vector<double> effn_series;
  double effn = 0.0;
  std::vector<double> w_cov;
  std::vector<double> w_final;
  std::vector<std::string> warnings;
};

WeightTable weight_table(const Dataset& dataset,
                         OverlapPolicy policy = OverlapPolicy::kReject);

}  // namespace consilience

#endif  // CONSILIENCE_WEIGHTING_HPP_
