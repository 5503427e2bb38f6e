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

#ifndef LOADCLUSTER_EXPERIMENT_H_
#define LOADCLUSTER_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "loadcluster/analysis.h"
#include "loadcluster/check.h"
#include "loadcluster/config.h"
#include "loadcluster/fixtures.h"
#include "loadcluster/generators.h"
#include "loadcluster/graph.h"
#include "loadcluster/protocol.h"
#include "loadcluster/rng.h"
#include "loadcluster/spectral.h"

namespace loadcluster {

// Stream indices derived from the master seed. Trials and Monte Carlo
// batches get their own ranges so changing one never shifts another.
inline constexpr std::uint64_t kGraphStream = 1;
inline constexpr std::uint64_t kTrialStreamBase = 1'000;
inline constexpr std::uint64_t kAnalysisStreamBase = 1'000'000;

// The planted clustered graph described by cfg (n, k, d, cross_swaps).
ClusteredGraph GenerateFromConfig(const ExperimentConfig& cfg);

// Protocol seed for trial `trial`.
std::uint64_t TrialSeed(std::uint64_t master, int trial);
// Master seed for an analysis batch (Monte Carlo runs derive from it).
std::uint64_t AnalysisSeed(std::uint64_t master, std::uint64_t purpose);

// A graph with its planted partition and everything the analysis derives
// from the spectrum. Derivations that can fail are kept optional with the
// error text alongside.
struct Instance {
  Graph graph;
  Partition planted;
  ProtocolVariant variant;
  Graph walk_graph;
  Spectrum spectrum;
  // Rounds the protocol uses: t_override, or the spectral-gap formula.
  int rounds = 0;
  std::optional<GapReport> gap;
  std::string gap_error;
  std::optional<ClusterBasis> basis;
  std::string basis_error;
  std::optional<GoodNodeResult> good;
};

// Throws Error(kMismatch) if the partition does not cover the graph, and
// Error(kOutOfRange) if the round count is needed but k >= n.
Instance PrepareInstance(Graph g, Partition planted,
                         const ExperimentConfig& cfg);

// Lowest-index good node, or nullopt.
std::optional<NodeId> FirstGoodNode(const Instance& inst);

// Exact E[M] by enumeration against the closed form. Only asserted for
// regular graphs; for emulated irregular graphs the distance is reported and
// the check passes by construction (`detail` says so).
CheckResult ExpectedMatchingExactCheck(const Fixture& f, double tol = 1e-12);

// Monte Carlo E[M] against the closed form: the fraction of entries within
// z standard errors (an entry with zero standard error must match within
// 1e-12). Passes when both the fraction over all entries and the fraction
// over the formula's support reach min_fraction.
CheckResult ExpectedMatchingMonteCarloCheck(const Graph& g,
                                            const ProtocolVariant& variant,
                                            std::int64_t trials, Rng& rng,
                                            double z = 4.0,
                                            double min_fraction = 0.99);

// Applies `count` sampled matchings of random regular graphs twice to random
// load vectors and compares with a single application.
CheckResult ProjectionCheck(int count, Rng& rng, double tol = 1e-15);

// (1 - lambda_k)/2 <= rho(k) + tol with rho by exhaustive search on the
// fixture's walk graph.
CheckResult CheegerFixtureCheck(const Fixture& f, int k, VolumeConvention conv,
                                double tol = 1e-9);

struct SparseDenseOutcome {
  CheckResult equivalence;
  CheckResult mass;
};

// Dense replay of `trace` compared with its sparse final states. With
// `corrupt`, the first stored suffix is perturbed by 1e-6 first (negative
// control).
SparseDenseOutcome SparseDenseCheck(const Graph& g, const RunTrace& trace,
                                    bool corrupt = false, double tol = 1e-12);

}  // namespace loadcluster

#endif  // LOADCLUSTER_EXPERIMENT_H_
