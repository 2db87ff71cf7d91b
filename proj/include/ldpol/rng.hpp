// Copyright 2026 The ldpol Authors
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

#ifndef LDPOL_RNG_HPP_
#define LDPOL_RNG_HPP_

#include <cstdint>
#include <limits>

namespace ldpol {

// What a stream is used for. Part of the stream key so that, e.g., the data
// draws of a learner never share bits with its noise draws.
enum class Purpose : std::uint64_t {
  kInit = 1,
  kData = 2,
  kNoise = 3,
  kShuffle = 4,
  kGraph = 5,
  kAltData = 6,
  kTest = 7,
};

struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  std::uint64_t learner = 0;
  std::uint64_t round = 0;
  Purpose purpose = Purpose::kTest;
};

// Counter-based generator: output k of the stream is a pure function of
// (key, k). Two runs that build the same key observe identical bits no
// matter in which order other streams were consumed. Satisfies
// UniformRandomBitGenerator so it plugs into <random> distributions.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(const StreamKey& key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform01();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace ldpol

#endif  // LDPOL_RNG_HPP_
