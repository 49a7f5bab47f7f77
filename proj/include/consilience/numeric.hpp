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

#ifndef CONSILIENCE_NUMERIC_HPP_
#define CONSILIENCE_NUMERIC_HPP_

#include <cmath>
#include <cstddef>
#include <span>

namespace consilience {

// Neumaier's variant of Kahan summation. Keeps sums over ~1e3 terms of
// order-1 quantities accurate to a few ulps.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

inline double mean(std::span<const double> xs) {
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

// Sum of squared deviations from the mean, two-pass.
inline double sum_squared_deviations(std::span<const double> xs) {
  const double m = mean(xs);
  CompensatedSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return s.value();
}

// True when the spread of `xs` is indistinguishable from rounding noise.
// Used to turn "variance is exactly zero in exact arithmetic" into a
// floating-point test.
inline bool has_no_spread(std::span<const double> xs) {
  if (xs.empty()) return true;
  double largest = 0.0;
  for (double x : xs) largest = std::fmax(largest, std::fabs(x));
  const double tol = 64.0 * 2.220446049250313e-16 * largest;
  return sum_squared_deviations(xs) <=
         static_cast<double>(xs.size()) * tol * tol;
}

// Quantile of an ascending-sorted sample by linear interpolation between
// order statistics (Hyndman-Fan type 7). p is clamped to [0, 1].
inline double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) return std::nan("");
  p = std::fmin(1.0, std::fmax(0.0, p));
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace consilience

#endif  // CONSILIENCE_NUMERIC_HPP_
