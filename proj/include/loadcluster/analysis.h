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

#ifndef LOADCLUSTER_ANALYSIS_H_
#define LOADCLUSTER_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loadcluster/check.h"
#include "loadcluster/dense_matrix.h"
#include "loadcluster/graph.h"
#include "loadcluster/matching.h"
#include "loadcluster/protocol.h"
#include "loadcluster/spectral.h"

namespace loadcluster {

// Dense replay of a run: one load vector per seed, evolved by the recorded
// matchings.
struct DenseEvolution {
  std::vector<ActiveSeed> seeds;
  // per_round[t] is s x n (row i = x^(t,i)), t = 0..T. Only the final round
  // is kept when the evolution was built with keep_rounds = false.
  std::vector<Matrix> per_round;

  const Matrix& final_loads() const { return per_round.back(); }
};

// Row i starts as the unit vector at seeds[i].node. Throws Error(kMismatch)
// if a matching is not a matching of g.
DenseEvolution EvolveDense(const Graph& g, std::span<const ActiveSeed> seeds,
                           std::span<const Matching> matchings,
                           bool keep_rounds = true);

// Largest |sum_v x^(t,i)(v) - 1| over every stored round and seed.
CheckResult MassConservation(const DenseEvolution& dense, double tol = 1e-12);

// state_v[id_i] == x^(T,i)(v) for all v, i, absent entries read as 0. The
// detail names the first mismatch. Also fails if a sparse state holds a
// prefix that is not a seed.
CheckResult EquivalenceCheck(const RunTrace& trace, const DenseEvolution& dense,
                             double tol = 1e-12);

struct ConvergencePoint {
  int t = 0;
  // Mean and standard error of ||Q y0 - y_t|| over runs.
  double dist_q = 0.0;
  double dist_q_se = 0.0;
  // 2 sqrt(t (1 - lambda_k)) ||Q y0||.
  double bound = 0.0;
  // Same without the leading 2.
  double bound_tight = 0.0;
  // Mean of ||(I - Q) y_t||.
  double residual = 0.0;
};

struct ConvergenceTrace {
  NodeId start_node = 0;
  int k = 0;
  int runs = 0;
  double q_norm = 0.0;
  std::vector<ConvergencePoint> points;
};

struct MonteCarloOptions {
  int runs = 100;
  std::uint64_t master_seed = 1;
  int jobs = 1;
  ProtocolVariant variant;
};

// y0 = unit vector at start_node, evolved by fresh matchings in every run.
// Run r draws from the stream DeriveSeed(master_seed, r).
ConvergenceTrace ConvergenceTraceFrom(const Graph& g, const Spectrum& spec, int k,
                             NodeId start_node, int t_max,
                             const MonteCarloOptions& options);

// Monte Carlo mean at t_max against the factor-2 bound plus 3 SE.
CheckResult ConvergenceBoundCheck(const ConvergenceTrace& trace);

struct ClusterDistanceResult {
  NodeId node = 0;
  bool node_good = false;
  int cluster = 0;
  int rounds = 0;
  int runs = 0;
  double mean_dist = 0.0;
  double dist_se = 0.0;
  // k * eps_observed * sqrt(ln n ln(1/beta) / (beta n)).
  double reference_scale = 0.0;
  // mean_dist / reference_scale (infinite when the scale is 0).
  double ratio = 0.0;
  double ratio_cap = 0.0;
  bool passed = false;
  std::string warning;
};

// Mean of ||y_T - chi_{S_j}|| with y0 the unit vector at `node` and S_j its
// planted cluster. Passes when mean_dist <= ratio_cap * reference_scale, or
// mean_dist <= exact_tol when the reference scale is zero.
ClusterDistanceResult ClusterDistanceCheck(const Graph& g, const Partition& planted,
                         const ClusterBasis& basis, const GoodNodeResult& good,
                         NodeId node, double beta, int rounds,
                         double ratio_cap, const MonteCarloOptions& options,
                         double exact_tol = 1e-9);

struct MisclassificationResult {
  // Unlabeled nodes included.
  NodeId count = 0;
  NodeId unlabeled = 0;
  // count - unlabeled.
  NodeId lenient_count = 0;
  double fraction = 0.0;
  double lenient_fraction = 0.0;
  // Output label -> planted cluster, or -1 when the label is left unmapped
  // (more output labels than clusters). Sorted by label.
  std::vector<std::pair<SeedId, int>> mapping;
  // True when the greedy assignment was used instead of the exact search.
  bool heuristic = false;
};

inline constexpr int kExactAssignmentMaxLabels = 8;

// Minimizes disagreements over injective maps from the labels of labeled
// nodes to planted clusters. Exact for at most kExactAssignmentMaxLabels
// distinct labels, greedy plus pairwise-swap refinement above (or when
// `force_greedy`).
MisclassificationResult Misclassification(std::span<const SeedId> labels,
                                          std::span<const char> labeled,
                                          const Partition& planted,
                                          bool force_greedy = false);

struct SeedCoverage {
  int clusters = 0;
  int seeded_clusters = 0;
  bool all_seeded = false;
  // Seeds per cluster.
  std::vector<int> per_cluster;
};

SeedCoverage Coverage(std::span<const ActiveSeed> seeds,
                      const Partition& planted);

struct CoverageProbability {
  int executions = 0;
  int covered = 0;
  double fraction = 0.0;
  // Standard error of `fraction`.
  double sigma = 0.0;
  // 1 - e^-3.
  double bound = 0.0;
  bool passed = false;
};

// Repeats the seeding phase `executions` times (execution r uses stream
// DeriveSeed(master_seed, r)) and counts executions that seed every planted
// cluster. Passes when fraction >= bound - 3 sigma.
CoverageProbability SeedCoverageProbability(const Partition& planted,
                                            double beta, int executions,
                                            std::uint64_t master_seed,
                                            int jobs = 1);

struct SeedQuality {
  ActiveSeed seed;
  int cluster = 0;
  bool good = false;
};

struct ClusteringReport {
  NodeId n = 0;
  int k = 0;
  int rounds = 0;
  int seeding_trials = 0;
  int seeds = 0;
  MisclassificationResult misclassification;
  std::int64_t words = 0;
  // rounds * n * seeding_trials.
  double word_bound = 0.0;
  double words_over_bound = 0.0;
  // words / (rounds * n * k ln k), reported against the asymptotic form;
  // 0 when k = 1.
  double words_over_klogk = 0.0;
  SeedCoverage coverage;
  std::vector<SeedQuality> seed_quality;
  std::optional<GapReport> gap;
  // Set when the gap report could not be formed (e.g. zero conductance).
  std::string gap_error;
};

// `good` may be null when no basis is available; seeds are then all
// reported as not good.
ClusteringReport BuildClusteringReport(const RunTrace& trace,
                                 const Partition& planted,
                                 const GoodNodeResult* good,
                                 std::optional<GapReport> gap,
                                 std::string gap_error = {});

}  // namespace loadcluster

#endif  // LOADCLUSTER_ANALYSIS_H_
