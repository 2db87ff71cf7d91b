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

#include "ldpol/rng.hpp"

namespace ldpol {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterStream::CounterStream(const StreamKey& key) {
  std::uint64_t h = mix64(key.seed);
  h = mix64(h ^ mix64(key.replicate + 0x1000));
  h = mix64(h ^ mix64(key.learner + 0x2000));
  h = mix64(h ^ mix64(key.round + 0x3000));
  h = mix64(h ^ mix64(static_cast<std::uint64_t>(key.purpose) + 0x4000));
  key_ = h;
}

CounterStream::result_type CounterStream::operator()() {
  // Two rounds of mixing over (key, counter) decorrelate adjacent counters.
  const std::uint64_t c = counter_++;
  return mix64(key_ ^ mix64(c));
}

double CounterStream::uniform01() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace ldpol
