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

#include "consilience/weighting.hpp"

#include <algorithm>
#include <cmath>

#include "consilience/error.hpp"
#include "consilience/numeric.hpp"

namespace consilience {

double pearson_r_squared(std::span<const double> x,
                         std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  CompensatedSum sxx, syy, sxy;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  const double r = sxy.value() / std::sqrt(sxx.value() * syy.value());
  return std::min(1.0, r * r);
}

namespace {

double unmatched_rsq(std::size_t ni, std::size_t nj) {
  return 1.0 / (static_cast<double>(std::min(ni, nj)) - 1.0);
}

std::string pair_label(const Dataset& ds, std::size_t i, std::size_t j) {
  return "'" + ds.series(i).name + "' and '" + ds.series(j).name + "'";
}

}  // namespace

RsqMatrix rsq_matrix(const Dataset& dataset, OverlapPolicy policy) {
  const std::size_t m = dataset.size();
  RsqMatrix out{SquareMatrix<double>(m, 0.0), {}};
  for (std::size_t i = 0; i < m; ++i) out.rsq(i, i) = 1.0;

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto& a = dataset.series(i);
      const auto& b = dataset.series(j);
      const auto ni = a.n_complete();
      const auto nj = b.n_complete();
      if (!dataset.case_match(i, j)) {
        out.rsq.set_symmetric(i, j, unmatched_rsq(ni, nj));
        continue;
      }
      std::vector<double> x, y;
      for (std::size_t k = 0; k < dataset.case_count(); ++k) {
        if (a.cases[k] && b.cases[k]) {
          x.push_back(a.cases[k]->obs);
          y.push_back(b.cases[k]->obs);
        }
      }
      if (x.size() < kMinPairs) {
        const std::string msg =
            "series " + pair_label(dataset, i, j) + " share only " +
            std::to_string(x.size()) + " cases; R^2 needs at least " +
            std::to_string(kMinPairs);
        if (policy == OverlapPolicy::kReject) {
          throw DegenerateError(DegeneracyKind::kInsufficientOverlap, msg);
        }
        out.rsq.set_symmetric(i, j, unmatched_rsq(ni, nj));
        out.warnings.push_back(msg + "; using unmatched surrogate 1/(min(Ni,Nj)-1)");
        continue;
      }
      if (has_no_spread(x) || has_no_spread(y)) {
        throw DegenerateError(DegeneracyKind::kDegenerateObserved,
                              "observed values of " + pair_label(dataset, i, j) +
                                  " have zero variance over their shared cases");
      }
      out.rsq.set_symmetric(i, j, pearson_r_squared(x, y));
    }
  }
  return out;
}

std::vector<double> raw_covariance_weights(const SquareMatrix<double>& rsq) {
  const std::size_t m = rsq.size();
  if (m == 1) return {1.0};
  if (m == 2) return {0.5, 0.5};
  const auto md = static_cast<double>(m);
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    double incl = 0.0;
    double excl = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        (a == i || b == i ? incl : excl) += rsq(a, b);
      }
    }
    w[i] = (1.0 / md) *
           (1.0 + ((md - 2.0) / (md - 1.0)) * (excl / (md - 2.0) - incl / 2.0));
  }
  return w;
}

CovarianceWeights covariance_weights(const SquareMatrix<double>& rsq) {
  CovarianceWeights out{raw_covariance_weights(rsq), false};
  if (std::any_of(out.w.begin(), out.w.end(), [](double x) { return x < 0.0; })) {
    out.clamped = true;
    for (auto& x : out.w) x = std::max(0.0, x);
    const double total = compensated_sum(out.w);
    for (auto& x : out.w) x /= total;
  }
  return out;
}

EffectiveN effn_values(const Dataset& dataset) {
  const std::size_t m = dataset.size();
  EffectiveN out{SquareMatrix<double>(m, 0.0), std::vector<double>(m), 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    out.pair(i, i) = static_cast<double>(dataset.series(i).n_complete());
  }
  if (m == 1) {
    out.series[0] = out.pair(0, 0);
    out.effn = out.pair(0, 0);
    return out;
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v =
          dataset.case_match(i, j)
              ? static_cast<double>(overlap_count(dataset, i, j))
              : static_cast<double>(std::min(dataset.series(i).n_complete(),
                                             dataset.series(j).n_complete()));
      out.pair.set_symmetric(i, j, v);
      total += v;
    }
  }
  const auto md = static_cast<double>(m);
  out.effn = total.value() / (md * (md - 1.0) / 2.0);
  for (std::size_t i = 0; i < m; ++i) {
    CompensatedSum row;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) row += out.pair(i, j);
    }
    out.series[i] = row.value() / (md - 1.0);
  }
  return out;
}

std::vector<double> final_weights(std::span<const double> w_cov,
                                  std::span<const double> effn_series,
                                  std::span<const double> importance) {
  std::vector<double> w(w_cov.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = w_cov[i] * effn_series[i] * importance[i];
  }
  const double total = compensated_sum(w);
  for (auto& x : w) x /= total;
  return w;
}

double joint_c(std::span<const double> component_c,
               std::span<const double> weights) {
  CompensatedSum s;
  for (std::size_t i = 0; i < component_c.size(); ++i) {
    s += weights[i] * component_c[i];
  }
  return s.value();
}

WeightTable weight_table(const Dataset& dataset, OverlapPolicy policy) {
  WeightTable t;
  const std::size_t m = dataset.size();
  if (m == 1) {
    t.rsq = SquareMatrix<double>(1, 1.0);
  } else {
    auto r = rsq_matrix(dataset, policy);
    t.rsq = std::move(r.rsq);
    t.warnings = std::move(r.warnings);
  }
  auto cov = covariance_weights(t.rsq);
  if (cov.clamped) {
    t.warnings.push_back(
        "covariance weighting produced a negative weight; clamped to 0 and "
        "renormalized");
  }
  t.w_cov = std::move(cov.w);
  auto effn = effn_values(dataset);
  t.effn_pair = std::move(effn.pair);
  t.effn_series = std::move(effn.series);
  t.effn = effn.effn;
  t.w_final = final_weights(t.w_cov, t.effn_series, dataset.importance());
  return t;
}

}  // namespace consilience
