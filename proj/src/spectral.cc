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

#include "loadcluster/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "loadcluster/error.h"

namespace loadcluster {

Matrix RandomWalkMatrix(const Graph& g) {
  const std::optional<int> d = g.RegularDegree();
  if (!d.has_value()) {
    Fail(ErrorCode::kInvalidArgument,
         "random walk matrix needs a regular graph; lift it first "
         "(degrees range over [" +
             std::to_string(g.min_degree()) + ", " +
             std::to_string(g.max_degree()) + "])");
  }
  if (*d == 0) {
    Fail(ErrorCode::kDegenerateInput, "random walk matrix of a 0-regular graph");
  }
  const NodeId n = g.num_nodes();
  const double inv = 1.0 / *d;
  Matrix p(n, n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) p(u, v) += inv;
    p(u, u) = g.self_loop_weight(u) * inv;
  }
  return p;
}

Spectrum Eigendecompose(const Matrix& p, double residual_tolerance,
                        const JacobiOptions& options) {
  SymmetricEigen eig = JacobiEigen(p, options);
  Spectrum spec;
  spec.eigenvalues = std::move(eig.values);
  spec.eigenvectors = std::move(eig.vectors);
  spec.sweeps = eig.sweeps;

  const std::size_t n = spec.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = spec.vector(i);
    double sq = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double r = Dot(p.row(u), f) - spec.eigenvalues[i] * f[u];
      sq += r * r;
    }
    spec.max_residual = std::max(spec.max_residual, std::sqrt(sq));
  }
  if (spec.max_residual > residual_tolerance) {
    Fail(ErrorCode::kNotConverged,
         "eigenpair residual " + std::to_string(spec.max_residual) +
             " exceeds tolerance " + std::to_string(residual_tolerance));
  }
  return spec;
}

namespace {

void RequireK(const Spectrum& spec, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > spec.size()) {
    Fail(ErrorCode::kOutOfRange, "k = " + std::to_string(k) +
                                     " outside [1, " +
                                     std::to_string(spec.size()) + "]");
  }
}

}  // namespace

Matrix TopKProjector(const Spectrum& spec, int k) {
  RequireK(spec, k);
  const std::size_t n = spec.size();
  Matrix q(n, n);
  for (int i = 0; i < k; ++i) {
    const auto f = spec.vector(i);
    for (std::size_t u = 0; u < n; ++u) {
      auto row = q.row(u);
      const double fu = f[u];
      for (std::size_t v = 0; v < n; ++v) row[v] += fu * f[v];
    }
  }
  return q;
}

std::vector<double> ProjectTopK(const Spectrum& spec, int k,
                                std::span<const double> y) {
  RequireK(spec, k);
  if (y.size() != spec.size()) Fail(ErrorCode::kMismatch, "vector length");
  std::vector<double> out(y.size(), 0.0);
  for (int i = 0; i < k; ++i) {
    const auto f = spec.vector(i);
    const double c = Dot(f, y);
    for (std::size_t v = 0; v < y.size(); ++v) out[v] += c * f[v];
  }
  return out;
}

std::vector<double> NormalizedIndicator(NodeId n, std::span<const NodeId> set) {
  std::vector<char> in(n, 0);
  NodeId size = 0;
  for (NodeId v : set) {
    if (v < 0 || v >= n) Fail(ErrorCode::kOutOfRange, "indicator node id");
    if (!in[v]) {
      in[v] = 1;
      ++size;
    }
  }
  if (size == 0) Fail(ErrorCode::kDegenerateInput, "indicator of the empty set");
  std::vector<double> chi(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (in[v]) chi[v] = 1.0 / size;
  }
  return chi;
}

ClusterBasis ComputeClusterBasis(const Spectrum& spec, const Partition& p,
                                 double degeneracy_tolerance) {
  const std::size_t n = spec.size();
  const int k = p.num_clusters();
  if (static_cast<std::size_t>(p.num_nodes()) != n) {
    Fail(ErrorCode::kMismatch, "partition size does not match the spectrum");
  }
  RequireK(spec, k);
  if (p.HasEmptyCluster()) {
    Fail(ErrorCode::kDegenerateInput, "partition has an empty cluster");
  }
  const auto sizes = p.sizes();

  ClusterBasis basis;
  basis.k = k;
  basis.tilde_chi = Matrix(k, n);
  basis.hat_chi = Matrix(k, n);
  basis.distortion.assign(k, 0.0);
  basis.alpha.assign(n, 0.0);

  // With e_j = 1_{S_j} / sqrt|S_j| orthonormal, the projection of f is
  // sum_j <f, e_j> e_j, i.e. the cluster mean of f on every node.
  std::vector<double> cluster_sum(k);
  for (int i = 0; i < k; ++i) {
    const auto f = spec.vector(i);
    std::fill(cluster_sum.begin(), cluster_sum.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) cluster_sum[p.cluster_of(v)] += f[v];
    auto tilde = basis.tilde_chi.row(i);
    for (std::size_t v = 0; v < n; ++v) {
      const int c = p.cluster_of(v);
      tilde[v] = cluster_sum[c] / sizes[c];
    }
  }

  // Classical Gram-Schmidt with one re-orthogonalization pass.
  std::vector<double> h(n);
  for (int i = 0; i < k; ++i) {
    const auto tilde = basis.tilde_chi.row(i);
    std::copy(tilde.begin(), tilde.end(), h.begin());
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        const auto prev = basis.hat_chi.row(j);
        const double c = Dot(h, prev);
        for (std::size_t v = 0; v < n; ++v) h[v] -= c * prev[v];
      }
    }
    const double norm = Norm(h);
    if (norm < degeneracy_tolerance) {
      Fail(ErrorCode::kDegenerateInput,
           "Gram-Schmidt degeneracy at eigenvector index " +
               std::to_string(i + 1) + " (residual norm " +
               std::to_string(norm) +
               "): the partition does not match the top-k eigenspace");
    }
    auto hat = basis.hat_chi.row(i);
    for (std::size_t v = 0; v < n; ++v) hat[v] = h[v] / norm;
  }

  for (int i = 0; i < k; ++i) {
    const auto f = spec.vector(i);
    const auto hat = basis.hat_chi.row(i);
    double sq = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double diff = f[v] - hat[v];
      sq += diff * diff;
      basis.alpha[v] += diff * diff;
    }
    basis.distortion[i] = std::sqrt(sq);
  }
  for (double& a : basis.alpha) a = std::sqrt(a);
  basis.epsilon_observed =
      *std::max_element(basis.distortion.begin(), basis.distortion.end());
  return basis;
}

GoodNodeResult ClassifyGoodNodes(const ClusterBasis& basis, double c_good,
                                 double beta, NodeId n, double zero_tolerance) {
  if (!(beta > 0.0 && beta <= 0.5)) {
    Fail(ErrorCode::kInvalidArgument,
         "beta = " + std::to_string(beta) + " outside (0, 1/2]");
  }
  if (static_cast<std::size_t>(n) != basis.alpha.size()) {
    Fail(ErrorCode::kMismatch, "node count does not match the basis");
  }
  const double k = basis.k;
  const double log_n = std::log(static_cast<double>(n));
  const double log_inv_beta = std::log(1.0 / beta);

  GoodNodeResult result;
  result.exact_basis = basis.epsilon_observed <= zero_tolerance;
  result.threshold = k * basis.epsilon_observed *
                     std::sqrt(c_good * log_n * log_inv_beta / (beta * n));
  result.count_bound = beta * n / (c_good * k * log_n * log_inv_beta);

  double alpha_sq = 0.0;
  result.good.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const double a = basis.alpha[v];
    alpha_sq += a * a;
    if (result.exact_basis || a <= result.threshold) {
      result.good[v] = 1;
      result.good_nodes.push_back(v);
    } else {
      ++result.bad_count;
    }
  }
  const double thr_sq = result.threshold * result.threshold;
  result.averaging_bound =
      thr_sq > 0.0 ? alpha_sq / thr_sq
                   : (alpha_sq > 0.0 ? std::numeric_limits<double>::infinity()
                                     : 0.0);
  return result;
}

int RoundsForGap(double c_t, NodeId n, double lambda_k1) {
  const double gap = 1.0 - lambda_k1;
  if (!(gap > 0.0)) {
    Fail(ErrorCode::kDegenerateInput, "lambda_{k+1} >= 1: no spectral gap");
  }
  const double t = std::ceil(c_t * std::log(static_cast<double>(n)) / gap);
  return std::max(1, static_cast<int>(t));
}

double GapScore(double upsilon, int k, double beta, NodeId n) {
  const double l = std::log(1.0 / beta);
  const double scale = std::pow(static_cast<double>(k), 5) /
                       (beta * beta * beta) * (l * l * l * l) *
                       std::log(static_cast<double>(n));
  return upsilon / scale;
}

GapReport ComputeGapReport(const Graph& g, const Partition& p,
                           const Spectrum& spec, VolumeConvention conv,
                           const GapConstants& constants, double tol) {
  const int k = p.num_clusters();
  if (static_cast<std::size_t>(k) >= spec.size()) {
    Fail(ErrorCode::kOutOfRange, "gap report needs k < n");
  }
  GapReport r;
  r.k = k;
  r.n = g.num_nodes();
  r.convention = conv;
  r.lambda_k = spec.lambda(k);
  r.lambda_k1 = spec.lambda(k + 1);
  if (r.lambda_k1 >= 1.0 - tol) {
    Fail(ErrorCode::kDegenerateInput,
         "lambda_{k+1} = " + std::to_string(r.lambda_k1) +
             " is 1 within tolerance: the graph has more than k components");
  }
  r.rho_upper = PlantedRhoUpper(g, p, conv);
  if (r.rho_upper <= 0.0) {
    Fail(ErrorCode::kDegenerateInput,
         "planted partition has zero conductance; upsilon is undefined");
  }
  r.upsilon = (1.0 - r.lambda_k1) / r.rho_upper;
  r.beta = constants.beta.value_or(p.Balance());
  r.gap_score = GapScore(r.upsilon, k, r.beta, r.n);
  r.c_t = constants.c_t;
  r.rounds = RoundsForGap(constants.c_t, r.n, r.lambda_k1);
  r.well_clustered_constant = constants.well_clustered_constant;
  r.well_clustered = r.gap_score >= constants.well_clustered_constant;
  r.epsilon_formula = k * std::sqrt(k / r.upsilon);
  return r;
}

CheckResult CheegerCheck(const Spectrum& spec, int k, double rho_exact,
                         double tol) {
  RequireK(spec, k);
  const double gap = 1.0 - spec.lambda(k);
  CheckResult result;
  result.name = "cheeger-lower";
  result.observed = gap / 2.0;
  result.limit = rho_exact + tol;
  result.passed = result.observed <= result.limit;
  result.detail = "(1 - lambda_k)/2 <= rho(k)";
  result.reported.emplace_back("rho", rho_exact);
  result.reported.emplace_back("one_minus_lambda_k", gap);
  if (gap > 0.0) {
    result.reported.emplace_back("rho_over_sqrt_gap", rho_exact / std::sqrt(gap));
  }
  return result;
}

}  // namespace loadcluster
