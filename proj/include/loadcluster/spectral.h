// Copyright 2026 The loadcluster Authors.
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

#ifndef LOADCLUSTER_SPECTRAL_H_
#define LOADCLUSTER_SPECTRAL_H_

#include <optional>
#include <span>
#include <vector>

#include "loadcluster/check.h"
#include "loadcluster/dense_matrix.h"
#include "loadcluster/graph.h"
#include "loadcluster/jacobi.h"

namespace loadcluster {

// Eigenpairs of a symmetric matrix, eigenvalues descending. Row i of
// `eigenvectors` is the unit eigenvector f_{i+1}.
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  // max_i ||P f_i - lambda_i f_i||.
  double max_residual = 0.0;
  int sweeps = 0;

  std::size_t size() const { return eigenvalues.size(); }
  std::span<const double> vector(std::size_t i) const {
    return eigenvectors.row(i);
  }
  // 1-based accessor matching lambda_1 >= ... >= lambda_n.
  double lambda(std::size_t i) const { return eigenvalues.at(i - 1); }
};

// P = A / D for a (lifted) D-regular graph: P[u][v] = mult(u, v) / D and
// P[v][v] = self_loop_weight(v) / D. Throws Error(kInvalidArgument) if the
// lifted degrees differ.
Matrix RandomWalkMatrix(const Graph& g);

// Full eigendecomposition by cyclic Jacobi. Throws Error(kNotConverged) if
// any residual exceeds `residual_tolerance`.
Spectrum Eigendecompose(const Matrix& p, double residual_tolerance = 1e-8,
                        const JacobiOptions& options = {});

inline Spectrum GraphSpectrum(const Graph& g) {
  return Eigendecompose(RandomWalkMatrix(g));
}

// Q = sum_{i <= k} f_i f_i^T.
Matrix TopKProjector(const Spectrum& spec, int k);

// Q y without forming Q.
std::vector<double> ProjectTopK(const Spectrum& spec, int k,
                                std::span<const double> y);

// Normalized indicator chi_S: 1/|S| on S, zero elsewhere.
std::vector<double> NormalizedIndicator(NodeId n, std::span<const NodeId> set);

// Cluster-indicator approximation of the top-k eigenvectors.
struct ClusterBasis {
  int k = 0;
  // Row i: projection of f_{i+1} onto span{chi_{S_1}, ..., chi_{S_k}}.
  Matrix tilde_chi;
  // Row i: Gram-Schmidt of the tilde_chi rows in index order.
  Matrix hat_chi;
  // ||hat_chi_i - f_i|| per i.
  std::vector<double> distortion;
  // max_i distortion[i].
  double epsilon_observed = 0.0;
  // alpha_v = sqrt(sum_i (f_i(v) - hat_chi_i(v))^2).
  std::vector<double> alpha;
};

// Throws Error(kDegenerateInput) naming the index when some projected
// eigenvector is numerically inside the span of its predecessors (residual
// norm below `degeneracy_tolerance`); this means the partition does not
// match the top-k eigenspace.
ClusterBasis ComputeClusterBasis(const Spectrum& spec, const Partition& p,
                                 double degeneracy_tolerance = 1e-8);

struct GoodNodeResult {
  std::vector<char> good;
  std::vector<NodeId> good_nodes;
  // k * eps * sqrt(C log n log(1/beta) / (beta n)).
  double threshold = 0.0;
  NodeId bad_count = 0;
  // sum_v alpha_v^2 / threshold^2: the averaging-argument cap on bad_count.
  double averaging_bound = 0.0;
  // beta n / (C k log n log(1/beta)): the bad-node budget when
  // sum_v alpha_v^2 = k eps^2.
  double count_bound = 0.0;
  bool exact_basis = false;
};

// Nodes whose alpha_v is under the threshold built from the observed
// distortion. When epsilon_observed <= zero_tolerance the basis is treated
// as exact and every node is good. Throws Error(kInvalidArgument) unless
// beta is in (0, 1/2].
GoodNodeResult ClassifyGoodNodes(const ClusterBasis& basis, double c_good,
                                 double beta, NodeId n,
                                 double zero_tolerance = 1e-10);

struct GapConstants {
  double c_t = 5.0;
  double well_clustered_constant = 1.0;
  // Defaults to the partition's min_i |S_i| / n.
  std::optional<double> beta;
};

struct GapReport {
  int k = 0;
  NodeId n = 0;
  VolumeConvention convention = VolumeConvention::kIncidentEdges;
  double lambda_k = 0.0;
  double lambda_k1 = 0.0;
  double rho_upper = 0.0;
  double upsilon = 0.0;
  double beta = 0.0;
  double gap_score = 0.0;
  double c_t = 0.0;
  int rounds = 0;
  double well_clustered_constant = 0.0;
  bool well_clustered = false;
  // k * sqrt(k / upsilon) with constant 1.
  double epsilon_formula = 0.0;
};

// ceil(c_t * ln n / (1 - lambda_{k+1})), at least 1.
int RoundsForGap(double c_t, NodeId n, double lambda_k1);

// upsilon / (k^5 beta^-3 log^4(1/beta) log n).
double GapScore(double upsilon, int k, double beta, NodeId n);

// Throws Error(kDegenerateInput) when lambda_{k+1} >= 1 - tol (more than k
// components) or when the planted partition has zero conductance, which
// leaves upsilon undefined.
GapReport ComputeGapReport(const Graph& g, const Partition& p,
                           const Spectrum& spec, VolumeConvention conv,
                           const GapConstants& constants = {},
                           double tol = 1e-9);

// Lower half of the higher-order Cheeger bracket, (1 - lambda_k)/2 <= rho(k).
// The upper half has no explicit constant; rho / sqrt(1 - lambda_k) is
// reported instead.
CheckResult CheegerCheck(const Spectrum& spec, int k, double rho_exact,
                         double tol = 1e-9);

}  // namespace loadcluster

#endif  // LOADCLUSTER_SPECTRAL_H_
