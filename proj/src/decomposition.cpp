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

#include "consilience/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "consilience/error.hpp"
#include "consilience/numeric.hpp"

namespace consilience {

namespace {

void require_min_pairs(std::size_t n) {
  if (n < kMinPairs) {
    throw DegenerateError(
        DegeneracyKind::kTooFewPairs,
        "need at least " + std::to_string(kMinPairs) +
            " complete pairs, got " + std::to_string(n) +
            " (with fewer the projection line is degenerate)");
  }
}

std::vector<double> observed_of(std::span<const Pair> pairs) {
  std::vector<double> xs;
  xs.reserve(pairs.size());
  for (const auto& p : pairs) xs.push_back(p.obs);
  return xs;
}

// Projection line held in extended precision. Error terms are formed from
// it directly; with large offsets between the series, rounding yp to double
// first is enough to leave a visible cross-product.
struct CenteredFit {
  long double mx = 0;
  long double my = 0;
  long double slope = 0;

  long double yp(double obs) const { return my + slope * (obs - mx); }
};

CenteredFit fit_centered(std::span<const Pair> pairs) {
  require_min_pairs(pairs.size());
  if (has_no_spread(observed_of(pairs))) {
    throw DegenerateError(DegeneracyKind::kDegenerateObserved,
                          "observed values have zero variance");
  }
  const auto n = static_cast<long double>(pairs.size());
  CenteredFit f;
  for (const auto& p : pairs) {
    f.mx += p.obs;
    f.my += p.mod;
  }
  f.mx /= n;
  f.my /= n;
  long double sxx = 0, sxy = 0;
  for (const auto& p : pairs) {
    sxx += (p.obs - f.mx) * (p.obs - f.mx);
    sxy += (p.obs - f.mx) * (p.mod - f.my);
  }
  f.slope = sxy / sxx;
  // One refinement step: refit the residuals and fold the correction in.
  long double r_sum = 0, r_x = 0;
  for (const auto& p : pairs) {
    const long double r = p.mod - f.yp(p.obs);
    r_sum += r;
    r_x += (p.obs - f.mx) * r;
  }
  f.my += r_sum / n;
  f.slope += r_x / sxx;
  return f;
}

ProjectionLine to_line(const CenteredFit& f, std::span<const Pair> pairs) {
  ProjectionLine line;
  line.slope = static_cast<double>(f.slope);
  line.intercept = static_cast<double>(f.my - f.slope * f.mx);
  line.yp.reserve(pairs.size());
  for (const auto& p : pairs) line.yp.push_back(static_cast<double>(f.yp(p.obs)));
  return line;
}

}  // namespace

ProjectionLine fit_projection(std::span<const Pair> pairs) {
  return to_line(fit_centered(pairs), pairs);
}

double scalar_value(std::span<const double> yobs, ScalarKind kind) {
  require_min_pairs(yobs.size());
  double value = 0.0;
  switch (kind) {
    case ScalarKind::kSampleStdDev:
      value = has_no_spread(yobs)
                  ? 0.0
                  : std::sqrt(sum_squared_deviations(yobs) /
                              static_cast<double>(yobs.size() - 1));
      break;
    case ScalarKind::kInterquartileRange: {
      std::vector<double> sorted(yobs.begin(), yobs.end());
      std::sort(sorted.begin(), sorted.end());
      value = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
      break;
    }
    case ScalarKind::kMean:
      value = std::fabs(mean(yobs));
      break;
    case ScalarKind::kMedian: {
      std::vector<double> sorted(yobs.begin(), yobs.end());
      std::sort(sorted.begin(), sorted.end());
      value = std::fabs(quantile_sorted(sorted, 0.5));
      break;
    }
  }
  if (!(value > 0.0)) {
    throw DegenerateError(DegeneracyKind::kDegenerateScalar,
                          "scalar '" + std::string(to_string(kind)) +
                              "' of the observed values is zero");
  }
  return value;
}

ErrorPartition decompose_with_scalar(std::span<const Pair> pairs,
                                     ScalarKind kind, double scalar) {
  const CenteredFit fit = fit_centered(pairs);
  ErrorPartition out;
  out.line = to_line(fit, pairs);
  out.kind = kind;
  out.scalar = scalar;
  out.n = pairs.size();

  out.total_err.reserve(out.n);
  out.sys_err.reserve(out.n);
  out.ran_err.reserve(out.n);
  long double tot = 0, sys = 0, ran = 0, cross = 0;
  const long double k = scalar;
  for (const auto& p : pairs) {
    const long double yp = fit.yp(p.obs);
    const long double e_tot = static_cast<long double>(p.obs) - p.mod;
    const long double e_sys = p.obs - yp;
    const long double e_ran = yp - p.mod;
    out.total_err.push_back(static_cast<double>(e_tot));
    out.sys_err.push_back(static_cast<double>(e_sys));
    out.ran_err.push_back(static_cast<double>(e_ran));
    tot += (e_tot / k) * (e_tot / k);
    sys += (e_sys / k) * (e_sys / k);
    ran += (e_ran / k) * (e_ran / k);
    cross += (e_sys / k) * (e_ran / k);
  }
  const auto n = static_cast<long double>(out.n);
  out.mse_tot = static_cast<double>(tot / n);
  out.mse_sys = static_cast<double>(sys / n);
  out.mse_ran = static_cast<double>(ran / n);
  out.cross_product = static_cast<double>(cross / n);
  out.c = consilience_from_mse(out.mse_tot);
  return out;
}

ErrorPartition decompose(std::span<const Pair> pairs, ScalarKind kind) {
  require_min_pairs(pairs.size());
  const auto xs = observed_of(pairs);
  if (has_no_spread(xs)) {
    throw DegenerateError(DegeneracyKind::kDegenerateObserved,
                          "observed values have zero variance");
  }
  return decompose_with_scalar(pairs, kind, scalar_value(xs, kind));
}

}  // namespace consilience
