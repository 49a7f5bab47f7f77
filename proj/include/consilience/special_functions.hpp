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

#ifndef CONSILIENCE_SPECIAL_FUNCTIONS_HPP_
#define CONSILIENCE_SPECIAL_FUNCTIONS_HPP_

namespace consilience {

// Standard normal CDF.
double normal_cdf(double z);

// Inverse standard normal CDF for p in (0, 1). Acklam's rational
// approximation followed by one Halley step; relative error well below
// 1e-12 over the whole range. Returns -inf/+inf at p = 0/1 and NaN outside.
double normal_quantile(double p);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
// (modified Lentz). a, b > 0, 0 <= x <= 1.
double incomplete_beta(double a, double b, double x);

// Pr(F > f) for F ~ F(d1, d2).
double f_upper_tail(double f, double d1, double d2);

}  // namespace consilience

#endif  // CONSILIENCE_SPECIAL_FUNCTIONS_HPP_
