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

#ifndef LDPOL_TOPOLOGY_HPP_
#define LDPOL_TOPOLOGY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ldpol {

// Undirected simple graph on learners 0..m-1.
class Graph {
 public:
  // Throws TopologyError on self-loops, duplicates or out-of-range ends.
  Graph(int m, std::vector<std::pair<int, int>> edges);

  static Graph Ring(int m);
  static Graph Complete(int m);
  static Graph Path(int m);
  // G(m, p) redrawn until connected, at most `max_tries` draws.
  static Graph ErdosRenyi(int m, double p, std::uint64_t seed,
                          int max_tries = 1000);

  int size() const { return m_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::vector<int> degrees() const;
  bool connected() const;

 private:
  int m_;
  std::vector<std::pair<int, int>> edges_;
};

struct WeightScheme {
  enum class Kind { kMetropolis, kUniform };
  Kind kind = Kind::kMetropolis;
  double a = 0.0;  // uniform edge weight

  static WeightScheme Metropolis() { return {}; }
  static WeightScheme Uniform(double a) { return {Kind::kUniform, a}; }
};

struct SpectralReport {
  bool ok = false;
  double delta2 = 0.0;
  double deltaN = 0.0;
  double contraction_norm = 0.0;
  std::vector<std::string> violations;
};

// Recomputes the spectrum of `w` and checks every clause of the interaction
// matrix assumption: symmetry and zero row/column sums within 1e-10,
// nonnegative off-diagonal, -1 < delta_N <= delta_2 < delta_1 = 0 and
// ||I + W - 11^T/m|| < 1.
SpectralReport spectral_check(const Eigen::MatrixXd& w);

// Symmetric zero-row-sum interaction matrix with its spectrum cached at
// construction. Immutable.
class WeightMatrix {
 public:
  // Validates with spectral_check; throws ValidationError listing the
  // violated clauses.
  static WeightMatrix FromEntries(const Eigen::MatrixXd& w);

  int size() const { return static_cast<int>(w_.rows()); }
  double operator()(int i, int j) const { return w_(i, j); }
  const Eigen::MatrixXd& entries() const { return w_; }

  // Ascending eigenvalues; the last one is delta_1 = 0.
  const Eigen::VectorXd& eigenvalues() const { return eig_; }
  double delta2() const { return delta2_; }
  double deltaN() const { return deltaN_; }
  double contraction_norm() const { return contraction_; }
  // min_i |w_ii|
  double wbar() const { return wbar_; }

  // (j, w_ij) for every j != i with w_ij > 0.
  std::vector<std::pair<int, double>> neighbors(int i) const;

 private:
  explicit WeightMatrix(const Eigen::MatrixXd& w, const SpectralReport& r);

  Eigen::MatrixXd w_;
  Eigen::VectorXd eig_;
  double delta2_;
  double deltaN_;
  double contraction_;
  double wbar_;
};

// Metropolis: w_ij = scale / (1 + max(deg_i, deg_j)); uniform(a): w_ij =
// scale * a. Diagonal w_ii = -sum_j w_ij.
// Throws TopologyError for disconnected graphs or inadmissible uniform a and
// ScalingError (with a suggested scale) when delta_N <= -1.
WeightMatrix build_weight_matrix(const Graph& graph, const WeightScheme& scheme,
                                 double scale);

// Picks scale = min(1, 0.9 / |delta_N(scale = 1)|).
WeightMatrix build_weight_matrix_auto(const Graph& graph,
                                      const WeightScheme& scheme);

}  // namespace ldpol

#endif  // LDPOL_TOPOLOGY_HPP_
