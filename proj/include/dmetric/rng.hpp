// Copyright 2026 The dmetric Authors.
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

#pragma once

#include <cstdint>
#include <limits>

namespace dmetric {

// Finalizer of the SplitMix64 generator (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// SplitMix64 as a UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Stream tags separating the uses of one experiment seed.
enum class StreamTag : std::uint64_t {
  input_samples = 0,
  probe_neighbors = 1,
  random_networks = 2,
};

// Independent stream for item `index` of a seeded experiment:
//   state = mix64(seed) ^ mix64(tag + c) ^ (index * golden)
// Work item i draws only from stream(seed, tag, i), so results do not depend
// on how items are split across threads.
constexpr SplitMix64 stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
  const auto t = static_cast<std::uint64_t>(tag);
  return SplitMix64(mix64(seed) ^ mix64(t + 0x632BE59BD9B4E019ULL) ^
                    (index * 0x9E3779B97F4A7C15ULL));
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(SplitMix64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace dmetric
