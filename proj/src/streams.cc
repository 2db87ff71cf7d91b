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

#include "ldpol/streams.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"

namespace ldpol {
namespace {

double ParseNumber(std::string_view tok, long line) {
  double v = 0.0;
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'",
                     line);
  }
  return v;
}

}  // namespace

Sample synthetic_stream(VecView theta_true, double B, double s, CounterStream& rng,
                        double trunc) {
  Sample xi;
  xi.x.resize(theta_true.size());
  for (double& v : xi.x) v = B * (2.0 * rng.uniform01() - 1.0);
  double e = 0.0;
  if (s > 0.0) {
    std::normal_distribution<double> normal(0.0, s);
    do {
      e = normal(rng);
    } while (std::fabs(e) > trunc * s);
  }
  xi.y = kernels::dot(xi.x, theta_true) + e;
  return xi;
}

Sample synthetic_logistic(VecView theta_true, double B, CounterStream& rng) {
  Sample xi;
  xi.x.resize(theta_true.size());
  for (double& v : xi.x) v = B * (2.0 * rng.uniform01() - 1.0);
  xi.y = rng.uniform01() < sigmoid(kernels::dot(xi.x, theta_true)) ? 1.0 : 0.0;
  return xi;
}

std::vector<Sample> parse_svmlight(std::istream& in, const SvmlightOptions& opts) {
  struct Row {
    double y;
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<Row> rows;
  std::size_t max_index = 0;
  std::string text;
  long line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ls(text);
    std::string tok;
    if (!(ls >> tok)) continue;
    Row row;
    row.y = ParseNumber(tok, line);
    if (!opts.label_map.empty()) {
      const auto it = opts.label_map.find(row.y);
      if (it == opts.label_map.end()) {
        throw ParseError("line " + std::to_string(line) + ": unmapped label '" + tok + "'",
                         line);
      }
      row.y = it->second;
    }
    std::size_t prev = 0;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0) {
        throw ParseError("line " + std::to_string(line) + ": expected idx:val, got '" + tok +
                             "'",
                         line);
      }
      std::size_t idx = 0;
      const auto [p, ec] = std::from_chars(tok.data(), tok.data() + colon, idx);
      if (ec != std::errc() || p != tok.data() + colon || idx == 0) {
        throw ParseError("line " + std::to_string(line) + ": bad feature index in '" + tok +
                             "'",
                         line);
      }
      if (idx <= prev) {
        throw ParseError("line " + std::to_string(line) + ": feature indices must increase",
                         line);
      }
      if (opts.dim != 0 && idx > opts.dim) {
        throw ParseError("line " + std::to_string(line) + ": index " + std::to_string(idx) +
                             " exceeds dimension " + std::to_string(opts.dim),
                         line);
      }
      prev = idx;
      row.entries.emplace_back(idx - 1,
                               ParseNumber(std::string_view(tok).substr(colon + 1), line));
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("svmlight input holds no samples");
  const std::size_t dim = opts.dim != 0 ? opts.dim : std::max<std::size_t>(max_index, 1);
  std::vector<Sample> out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out[r].x.assign(dim, 0.0);
    out[r].y = rows[r].y;
    for (const auto& [j, v] : rows[r].entries) out[r].x[j] = v;
  }
  if (opts.scale01) {
    for (std::size_t j = 0; j < dim; ++j) {
      double lo = INFINITY, hi = -INFINITY;
      for (const Sample& s : out) {
        lo = std::min(lo, s.x[j]);
        hi = std::max(hi, s.x[j]);
      }
      for (Sample& s : out) s.x[j] = hi > lo ? (s.x[j] - lo) / (hi - lo) : 0.0;
    }
  }
  return out;
}

std::vector<Sample> load_svmlight(const std::string& path, const SvmlightOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open svmlight file '" + path + "'");
  return parse_svmlight(in, opts);
}

void write_svmlight(std::ostream& out, const std::vector<Sample>& samples) {
  out << std::setprecision(17);
  for (const Sample& s : samples) {
    out << s.y;
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      if (s.x[j] != 0.0) out << ' ' << j + 1 << ':' << s.x[j];
    }
    out << '\n';
  }
}

StreamKind parse_stream_kind(const std::string& s) {
  if (s == "synthetic_linear") return StreamKind::kSyntheticLinear;
  if (s == "synthetic_logistic") return StreamKind::kSyntheticLogistic;
  if (s == "svmlight") return StreamKind::kSvmlight;
  throw ConfigError("unknown stream kind '" + s + "'");
}

std::string to_string(StreamKind k) {
  switch (k) {
    case StreamKind::kSyntheticLinear: return "synthetic_linear";
    case StreamKind::kSyntheticLogistic: return "synthetic_logistic";
    case StreamKind::kSvmlight: return "svmlight";
  }
  return "?";
}

DataSource::DataSource(StreamSpec spec, int m) : spec_(std::move(spec)), m_(m) {
  if (m_ < 1) throw ConfigError("need at least one learner");
  if (spec_.kind == StreamKind::kSvmlight) {
    auto data = std::make_shared<std::vector<Sample>>(load_svmlight(spec_.path, spec_.svmlight));
    if (data->size() < static_cast<std::size_t>(m_)) {
      throw ConfigError("svmlight file has fewer samples than learners");
    }
    dim_ = data->front().x.size();
    for (const Sample& s : *data) {
      if (s.y != 0.0 && s.y != 1.0) {
        throw ConfigError("svmlight labels must map to {0, 1}; use stream.label_map");
      }
    }
    partition_.resize(m_);
    for (std::size_t k = 0; k < data->size(); ++k) partition_[k % m_].push_back(k);
    data_ = std::move(data);
    return;
  }
  if (spec_.theta_true.empty()) throw ConfigError("synthetic stream needs theta_true");
  if (!(spec_.feature_bound > 0.0)) throw ConfigError("feature bound B must be positive");
  if (!(spec_.label_noise >= 0.0)) throw ConfigError("label noise must be nonnegative");
  if (!(spec_.noise_trunc > 0.0)) throw ConfigError("noise truncation must be positive");
  dim_ = spec_.theta_true.size();
}

Sample DataSource::draw(std::uint64_t seed, std::uint64_t replicate, int learner, Round t,
                        int k, Purpose purpose) const {
  CounterStream rng({seed, replicate, static_cast<std::uint64_t>(learner),
                     static_cast<std::uint64_t>(t) * 1024u + static_cast<std::uint64_t>(k),
                     purpose});
  switch (spec_.kind) {
    case StreamKind::kSyntheticLinear:
      return synthetic_stream(spec_.theta_true, spec_.feature_bound, spec_.label_noise, rng,
                              spec_.noise_trunc);
    case StreamKind::kSyntheticLogistic:
      return synthetic_logistic(spec_.theta_true, spec_.feature_bound, rng);
    case StreamKind::kSvmlight: {
      const auto& part = partition_[learner];
      std::uniform_int_distribution<std::size_t> pick(0, part.size() - 1);
      return (*data_)[part[pick(rng)]];
    }
  }
  throw Error("unreachable stream kind");
}

DataBounds DataSource::bounds() const {
  DataBounds b;
  b.dim = dim_;
  if (spec_.kind == StreamKind::kSvmlight) {
    b.feature_norm2 = b.feature_norm1 = b.label_abs = 0.0;
    for (const Sample& s : *data_) {
      b.feature_norm2 = std::max(b.feature_norm2, std::sqrt(kernels::norm2sq(s.x)));
      b.feature_norm1 = std::max(b.feature_norm1, kernels::norm1(s.x));
      b.label_abs = std::max(b.label_abs, std::fabs(s.y));
    }
    return b;
  }
  const double B = spec_.feature_bound;
  const double n = static_cast<double>(dim_);
  b.feature_norm2 = B * std::sqrt(n);
  b.feature_norm1 = B * n;
  b.label_abs = spec_.kind == StreamKind::kSyntheticLinear
                    ? B * kernels::norm1(spec_.theta_true) + spec_.noise_trunc * spec_.label_noise
                    : 1.0;
  return b;
}

}  // namespace ldpol
