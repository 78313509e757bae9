// Copyright 2026 The lsgen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LSGEN_RNG_H_
#define LSGEN_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace lsgen {

// 64-bit FNV-1a. Stable across platforms, unlike std::hash.
uint64_t fnv1a64(std::string_view data);

// splitmix64 finalizer.
uint64_t mix64(uint64_t x);

// Seeded generator with platform-independent draws. std::mt19937_64 output
// is fully specified; the distributions in <random> are not, so the
// conversions below are done by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(mix64(seed)) {}

  // Independent stream for one named consumer of a run seed.
  static Rng substream(uint64_t seed, std::string_view name) {
    return Rng(seed ^ fnv1a64(name));
  }

  uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on [0, n). n must be positive.
  size_t index(size_t n) {
    const uint64_t bound = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<size_t>(x % bound);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lsgen

#endif  // LSGEN_RNG_H_
