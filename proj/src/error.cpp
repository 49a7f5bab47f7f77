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

#include "consilience/error.hpp"

namespace consilience {

const char* to_string(DegeneracyKind kind) {
  switch (kind) {
    case DegeneracyKind::kTooFewPairs:
      return "TooFewPairs";
    case DegeneracyKind::kDegenerateObserved:
      return "DegenerateObserved";
    case DegeneracyKind::kDegenerateScalar:
      return "DegenerateScalar";
    case DegeneracyKind::kDegenerateSeries:
      return "DegenerateSeries";
    case DegeneracyKind::kInsufficientOverlap:
      return "InsufficientOverlap";
  }
  return "Unknown";
}

}  // namespace consilience
