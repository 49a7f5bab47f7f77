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

#ifndef CONSILIENCE_RANDOM_HPP_
#define CONSILIENCE_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace consilience {

// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// A generator for one independent stream. Streams are addressed by
// (seed, stream index): the engine is std::mt19937_64 seeded with
// mix64(mix64(seed) ^ stream). The draw helpers below are written out
// explicitly so sequences are identical across standard libraries.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix64(mix64(seed) ^ stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform on the closed interval [lo, hi].
  double uniform_closed(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) / 9007199254740991.0;
    return lo + (hi - lo) * u;
  }

  // Unbiased uniform integer in [0, bound) (Lemire's multiply-shift with
  // rejection).
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace consilience

#endif  // CONSILIENCE_RANDOM_HPP_
