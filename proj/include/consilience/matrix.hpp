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

#ifndef CONSILIENCE_MATRIX_HPP_
#define CONSILIENCE_MATRIX_HPP_

#include <cassert>
#include <cstddef>
#include <vector>

namespace consilience {

// Dense square matrix, row-major. Used for the small M x M tables
// (R^2, overlap counts, case matching) where M <= 5.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{})
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }

  void set_symmetric(std::size_t i, std::size_t j, T value) {
    (*this)(i, j) = value;
    (*this)(j, i) = value;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace consilience

#endif  // CONSILIENCE_MATRIX_HPP_
