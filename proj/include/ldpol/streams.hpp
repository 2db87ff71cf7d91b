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

#ifndef LDPOL_STREAMS_HPP_
#define LDPOL_STREAMS_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ldpol/common.hpp"
#include "ldpol/objectives.hpp"
#include "ldpol/rng.hpp"

namespace ldpol {

// x uniform in [-B, B]^n, y = x^T theta_true + e with e ~ N(0, s^2)
// truncated to |e| <= trunc * s.
Sample synthetic_stream(VecView theta_true, double B, double s, CounterStream& rng,
                        double trunc = 4.0);

// x uniform in [-B, B]^n, y ~ Bernoulli(sigmoid(x^T theta_true)).
Sample synthetic_logistic(VecView theta_true, double B, CounterStream& rng);

struct SvmlightOptions {
  std::map<double, double> label_map;  // empty: labels kept as read
  std::size_t dim = 0;                 // 0: max observed index
  bool scale01 = false;                // per-feature min-max scaling to [0, 1]
};

// Parses "label idx:val idx:val ..." lines with 1-based indices. Blank lines
// and '#' comments are skipped. Throws ParseError (with line number) on a
// malformed line or unmapped label and Error on an empty file.
std::vector<Sample> load_svmlight(const std::string& path, const SvmlightOptions& opts = {});
std::vector<Sample> parse_svmlight(std::istream& in, const SvmlightOptions& opts = {});
void write_svmlight(std::ostream& out, const std::vector<Sample>& samples);

enum class StreamKind { kSyntheticLinear, kSyntheticLogistic, kSvmlight };

StreamKind parse_stream_kind(const std::string& s);
std::string to_string(StreamKind k);

struct StreamSpec {
  StreamKind kind = StreamKind::kSyntheticLinear;
  Vector theta_true;
  double feature_bound = 1.0;  // B
  double label_noise = 0.1;    // s
  double noise_trunc = 4.0;
  std::string path;
  SvmlightOptions svmlight;
};

// I.i.d. per-learner sample source. The draw for (seed, replicate, learner,
// round) is a pure function of those keys. File data is partitioned
// round-robin across learners and sampled with replacement.
class DataSource {
 public:
  DataSource(StreamSpec spec, int m);

  std::size_t dim() const { return dim_; }
  const StreamSpec& spec() const { return spec_; }
  bool classification() const { return spec_.kind != StreamKind::kSyntheticLinear; }

  // The k-th sample of round t (k < per_round).
  Sample draw(std::uint64_t seed, std::uint64_t replicate, int learner, Round t,
              int k = 0, Purpose purpose = Purpose::kData) const;

  // Feature and label bounds of every sample this source can emit.
  DataBounds bounds() const;

 private:
  StreamSpec spec_;
  int m_;
  std::size_t dim_;
  std::shared_ptr<const std::vector<Sample>> data_;
  std::vector<std::vector<std::size_t>> partition_;
};

}  // namespace ldpol

#endif  // LDPOL_STREAMS_HPP_
