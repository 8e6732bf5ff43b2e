// Copyright 2026 The greduce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace greduce {

/// The engine's pinned pseudo-random generator: splitmix64.
///
/// The algorithm is fixed by this project so that recorded traces are
/// portable across implementations. State update is
///   state += 0x9E3779B97F4A7C15
/// and the output mix is the two xor-multiply rounds below. Bounded draws
/// use rejection sampling (see below()), so they are unbiased and
/// reproducible from the seed alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    // Rejection threshold: 2^64 mod n.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  bool coin() { return (next() & 1ull) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace greduce
