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

#ifndef CONSILIENCE_ERROR_HPP_
#define CONSILIENCE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace consilience {

// Base of every error the library raises. Callers that only need to
// distinguish "bad input file" from "data the statistics cannot handle"
// catch ParseError and DegenerateError respectively.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text: bad header, non-numeric cells, half-present pairs,
// too many or too few response series, unreadable config.
class ParseError : public Error {
 public:
  using Error::Error;
};

enum class DegeneracyKind {
  kTooFewPairs,          // fewer usable pairs than an operation needs
  kDegenerateObserved,   // observed series has no spread
  kDegenerateScalar,     // chosen scalar evaluates to zero
  kDegenerateSeries,     // a series in a conventional test has no spread
  kInsufficientOverlap,  // two case-matched series share fewer than 3 cases
};

const char* to_string(DegeneracyKind kind);

// Input is well formed but the requested statistic is undefined for it.
class DegenerateError : public Error {
 public:
  DegenerateError(DegeneracyKind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  DegeneracyKind kind() const { return kind_; }

 private:
  DegeneracyKind kind_;
};

// Caller asked for something outside the supported envelope, e.g. an
// untabulated significance level or an enumeration that is too large.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace consilience

#endif  // CONSILIENCE_ERROR_HPP_
