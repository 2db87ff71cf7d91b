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

#include "ldpol/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "ldpol/error.hpp"
#include "ldpol/rng.hpp"

namespace ldpol {
namespace {

constexpr double kTol = 1e-10;

Eigen::MatrixXd RawWeights(const Graph& graph, const WeightScheme& scheme,
                           double scale) {
  const int m = graph.size();
  const std::vector<int> deg = graph.degrees();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (const auto& [i, j] : graph.edges()) {
    double wij = scheme.kind == WeightScheme::Kind::kMetropolis
                     ? 1.0 / (1.0 + std::max(deg[i], deg[j]))
                     : scheme.a;
    w(i, j) = w(j, i) = scale * wij;
  }
  for (int i = 0; i < m; ++i) w(i, i) = -(w.row(i).sum() - w(i, i));
  return w;
}

}  // namespace

Graph::Graph(int m, std::vector<std::pair<int, int>> edges) : m_(m) {
  if (m < 1) throw TopologyError("graph needs at least one learner");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= m || j >= m) {
      throw TopologyError("edge endpoint out of range");
    }
    if (i == j) throw TopologyError("self-loop on learner " + std::to_string(i));
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second) {
      throw TopologyError("duplicate edge (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
    }
    edges_.emplace_back(i, j);
  }
}

Graph Graph::Ring(int m) {
  std::vector<std::pair<int, int>> e;
  if (m == 2) e.emplace_back(0, 1);
  if (m >= 3) {
    for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
  }
  return Graph(m, std::move(e));
}

Graph Graph::Complete(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) e.emplace_back(i, j);
  return Graph(m, std::move(e));
}

Graph Graph::Path(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
  return Graph(m, std::move(e));
}

Graph Graph::ErdosRenyi(int m, double p, std::uint64_t seed, int max_tries) {
  if (!(p > 0.0 && p <= 1.0)) throw TopologyError("edge probability must be in (0,1]");
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    CounterStream rng({seed, 0, 0, static_cast<std::uint64_t>(attempt),
                       Purpose::kGraph});
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (rng.uniform01() < p) e.emplace_back(i, j);
    Graph g(m, std::move(e));
    if (g.connected()) return g;
  }
  throw TopologyError("no connected Erdos-Renyi draw after " +
                      std::to_string(max_tries) + " attempts");
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(m_, 0);
  for (const auto& [i, j] : edges_) {
    ++d[i];
    ++d[j];
  }
  return d;
}

bool Graph::connected() const {
  std::vector<std::vector<int>> adj(m_);
  for (const auto& [i, j] : edges_) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(m_, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        q.push(u);
      }
    }
  }
  return count == m_;
}

SpectralReport spectral_check(const Eigen::MatrixXd& w) {
  SpectralReport r;
  if (w.rows() != w.cols() || w.rows() == 0) {
    r.violations.push_back("square: matrix must be square and nonempty");
    return r;
  }
  if (!w.allFinite()) {
    r.violations.push_back("finite: entries must be finite");
    return r;
  }
  const int m = static_cast<int>(w.rows());
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > kTol) {
    r.violations.push_back("symmetric: W != W^T");
  }
  if (w.rowwise().sum().cwiseAbs().maxCoeff() > kTol) {
    r.violations.push_back("row_sums: W 1 != 0");
  }
  if (w.colwise().sum().cwiseAbs().maxCoeff() > kTol) {
    r.violations.push_back("column_sums: 1^T W != 0");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && w(i, j) < 0.0) {
        r.violations.push_back("off_diagonal: w_ij must be >= 0");
        i = m;
        break;
      }

  // Spectrum of the symmetric part; exact when the symmetry clause holds.
  const Eigen::MatrixXd sym = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double delta1 = ev(m - 1);
  r.deltaN = ev(0);
  r.delta2 = m >= 2 ? ev(m - 2) : 0.0;
  if (std::fabs(delta1) > kTol) {
    r.violations.push_back("delta1: largest eigenvalue must be 0");
  }
  if (m >= 2) {
    if (!(r.delta2 < -kTol)) {
      r.violations.push_back("delta2: second eigenvalue must be < 0 (graph connected)");
    }
    if (!(r.deltaN > -1.0)) {
      r.violations.push_back("deltaN: smallest eigenvalue must be > -1");
    }
  }
  const Eigen::MatrixXd c = Eigen::MatrixXd::Identity(m, m) + sym -
                            Eigen::MatrixXd::Constant(m, m, 1.0 / m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cs(c, Eigen::EigenvaluesOnly);
  r.contraction_norm = cs.eigenvalues().cwiseAbs().maxCoeff();
  if (!(r.contraction_norm < 1.0)) {
    r.violations.push_back("contraction: ||I + W - 11^T/m|| must be < 1");
  }
  r.ok = r.violations.empty();
  return r;
}

WeightMatrix::WeightMatrix(const Eigen::MatrixXd& w, const SpectralReport& r)
    : w_(w), delta2_(r.delta2), deltaN_(r.deltaN), contraction_(r.contraction_norm) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w_, Eigen::EigenvaluesOnly);
  eig_ = es.eigenvalues();
  wbar_ = w_.diagonal().cwiseAbs().minCoeff();
}

WeightMatrix WeightMatrix::FromEntries(const Eigen::MatrixXd& w) {
  SpectralReport r = spectral_check(w);
  if (!r.ok) {
    std::ostringstream os;
    os << "weight matrix fails validation:";
    for (const auto& v : r.violations) os << " [" << v << "]";
    throw ValidationError(os.str(), r.violations);
  }
  return WeightMatrix(w, r);
}

std::vector<std::pair<int, double>> WeightMatrix::neighbors(int i) const {
  std::vector<std::pair<int, double>> out;
  for (int j = 0; j < size(); ++j)
    if (j != i && w_(i, j) > 0.0) out.emplace_back(j, w_(i, j));
  return out;
}

WeightMatrix build_weight_matrix(const Graph& graph, const WeightScheme& scheme,
                                 double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ScalingError("scale must lie in (0, 1]", 1.0);
  }
  if (!graph.connected()) throw TopologyError("graph is disconnected");
  if (scheme.kind == WeightScheme::Kind::kUniform) {
    const std::vector<int> deg = graph.degrees();
    const int max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    if (!(scheme.a > 0.0) || !(scheme.a * max_deg < 1.0)) {
      throw TopologyError("uniform weight a must satisfy a > 0 and a * max_degree < 1");
    }
  }
  const Eigen::MatrixXd w = RawWeights(graph, scheme, scale);
  const SpectralReport r = spectral_check(w);
  if (graph.size() >= 2 && !(r.deltaN > -1.0)) {
    const double suggested = 0.9 * scale / std::fabs(r.deltaN);
    std::ostringstream os;
    os << "delta_N = " << r.deltaN << " <= -1; use scale <= " << suggested;
    throw ScalingError(os.str(), suggested);
  }
  return WeightMatrix::FromEntries(w);
}

WeightMatrix build_weight_matrix_auto(const Graph& graph,
                                      const WeightScheme& scheme) {
  if (!graph.connected()) throw TopologyError("graph is disconnected");
  const SpectralReport r = spectral_check(RawWeights(graph, scheme, 1.0));
  double scale = 1.0;
  if (graph.size() >= 2) scale = std::min(1.0, 0.9 / std::fabs(r.deltaN));
  return build_weight_matrix(graph, scheme, scale);
}

}  // namespace ldpol
