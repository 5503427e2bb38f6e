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

#include "loadcluster/experiment.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "loadcluster/error.h"

namespace loadcluster {

ClusteredGraph GenerateFromConfig(const ExperimentConfig& cfg) {
  Rng rng = MakeRng(cfg.master_seed, kGraphStream);
  return MakeClusteredRegular(cfg.n, cfg.k, cfg.d, cfg.cross_swaps, rng);
}

std::uint64_t TrialSeed(std::uint64_t master, int trial) {
  return DeriveSeed(master, kTrialStreamBase + static_cast<std::uint64_t>(trial));
}

std::uint64_t AnalysisSeed(std::uint64_t master, std::uint64_t purpose) {
  return DeriveSeed(master, kAnalysisStreamBase + purpose);
}

Instance PrepareInstance(Graph g, Partition planted,
                         const ExperimentConfig& cfg) {
  if (planted.num_nodes() != g.num_nodes()) {
    Fail(ErrorCode::kMismatch, "partition has " +
                                   std::to_string(planted.num_nodes()) +
                                   " nodes, graph has " +
                                   std::to_string(g.num_nodes()));
  }
  Instance inst;
  inst.graph = std::move(g);
  inst.planted = std::move(planted);
  inst.variant = VariantFor(cfg, inst.graph);
  CheckVariant(inst.graph, inst.variant);
  inst.walk_graph = inst.variant.emulated()
                        ? LiftToRegular(inst.graph, inst.variant.lift_degree)
                        : inst.graph;
  inst.spectrum = GraphSpectrum(inst.walk_graph);
  const int k = inst.planted.num_clusters();
  const NodeId n = inst.graph.num_nodes();
  if (cfg.t_override) {
    inst.rounds = *cfg.t_override;
  } else {
    if (k >= n) Fail(ErrorCode::kOutOfRange, "round count needs k < n");
    inst.rounds = RoundsForGap(cfg.c_t, n, inst.spectrum.lambda(k + 1));
  }
  try {
    GapConstants constants;
    constants.c_t = cfg.c_t;
    constants.beta = cfg.beta;
    inst.gap = ComputeGapReport(inst.walk_graph, inst.planted, inst.spectrum,
                                cfg.volume_convention, constants);
  } catch (const Error& e) {
    inst.gap_error = e.what();
  }
  try {
    inst.basis = ComputeClusterBasis(inst.spectrum, inst.planted);
    inst.good = ClassifyGoodNodes(*inst.basis, cfg.c_good, cfg.beta, n);
  } catch (const Error& e) {
    inst.basis.reset();
    inst.basis_error = e.what();
  }
  return inst;
}

std::optional<NodeId> FirstGoodNode(const Instance& inst) {
  if (!inst.good || inst.good->good_nodes.empty()) return std::nullopt;
  return inst.good->good_nodes.front();
}

CheckResult ExpectedMatchingExactCheck(const Fixture& f, double tol) {
  CheckResult r;
  r.name = "expected-matching/" + f.name;
  r.limit = tol;
  const Matrix exact = EnumerateExpectedMatrix(f.graph, f.variant);
  const Matrix formula = ExpectedMatchingFormula(f.graph, f.variant);
  r.observed = MaxAbsDiff(exact, formula);
  if (Validate(f.graph).regular) {
    r.passed = r.observed <= tol;
  } else {
    r.passed = true;
    r.detail = "irregular graph: distance to the lifted formula reported only";
  }
  r.reported.emplace_back("outcomes",
                          static_cast<double>(OutcomeCount(f.graph, f.variant)));
  return r;
}

CheckResult ExpectedMatchingMonteCarloCheck(const Graph& g,
                                            const ProtocolVariant& variant,
                                            std::int64_t trials, Rng& rng,
                                            double z, double min_fraction) {
  const MonteCarloMatrix mc = MonteCarloExpectedMatrix(g, variant, trials, rng);
  const Matrix formula = ExpectedMatchingFormula(g, variant);
  const NodeId n = g.num_nodes();
  std::int64_t within = 0;
  std::int64_t support = 0;
  std::int64_t support_within = 0;
  double worst_z = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      const double diff = std::abs(mc.mean(u, v) - formula(u, v));
      const double se = mc.standard_error(u, v);
      const bool ok = se > 0.0 ? diff <= z * se : diff <= 1e-12;
      if (se > 0.0) worst_z = std::max(worst_z, diff / se);
      within += ok ? 1 : 0;
      if (formula(u, v) != 0.0) {
        ++support;
        support_within += ok ? 1 : 0;
      }
    }
  }
  CheckResult r;
  r.name = "expected-matching-sampled";
  const double all = static_cast<double>(n) * n;
  const double support_fraction =
      support > 0 ? static_cast<double>(support_within) / support : 1.0;
  r.observed = within / all;
  r.limit = min_fraction;
  r.passed = r.observed >= min_fraction && support_fraction >= min_fraction;
  r.reported.emplace_back("trials", static_cast<double>(trials));
  r.reported.emplace_back("support_fraction", support_fraction);
  r.reported.emplace_back("support_entries", static_cast<double>(support));
  r.reported.emplace_back("max_z", worst_z);
  return r;
}

CheckResult ProjectionCheck(int count, Rng& rng, double tol) {
  CheckResult r;
  r.name = "projection";
  r.limit = tol;
  constexpr int kPerGraph = 50;
  std::uniform_real_distribution<double> load(0.0, 1.0);
  int done = 0;
  int graphs = 0;
  while (done < count) {
    // Connected random regular graphs need d >= 3 to be found quickly.
    std::uniform_int_distribution<NodeId> size(6, 40);
    NodeId m = size(rng);
    std::uniform_int_distribution<int> degree(3, 5);
    const int d = degree(rng);
    if (m * d % 2 != 0) ++m;
    const Graph g = RandomRegular(m, d, rng);
    ++graphs;
    for (int i = 0; i < kPerGraph && done < count; ++i, ++done) {
      const Matching match = SampleMatching(g, ProtocolVariant::Regular(), rng);
      std::vector<double> x(m);
      for (double& v : x) v = load(rng);
      const std::vector<double> once = Averaged(match, x);
      const std::vector<double> twice = Averaged(match, once);
      for (NodeId v = 0; v < m; ++v) {
        r.observed = std::max(r.observed, std::abs(once[v] - twice[v]));
      }
    }
  }
  r.passed = r.observed <= tol;
  r.reported.emplace_back("matchings", count);
  r.reported.emplace_back("graphs", graphs);
  return r;
}

CheckResult CheegerFixtureCheck(const Fixture& f, int k, VolumeConvention conv,
                                double tol) {
  const Graph walk = f.WalkGraph();
  const Spectrum spec = GraphSpectrum(walk);
  const RhoResult rho = BruteForceRho(walk, k, conv);
  CheckResult r = CheegerCheck(spec, k, rho.value, tol);
  r.name = "cheeger/" + f.name + "/k=" + std::to_string(k) + "/" +
           std::string(VolumeConventionName(conv));
  r.reported.emplace_back("partitions_examined",
                          static_cast<double>(rho.partitions_examined));
  return r;
}

SparseDenseOutcome SparseDenseCheck(const Graph& g, const RunTrace& trace,
                                    bool corrupt, double tol) {
  const DenseEvolution dense = EvolveDense(g, trace.seeds, trace.matchings);
  SparseDenseOutcome out;
  out.mass = MassConservation(dense, tol);
  if (!corrupt) {
    out.equivalence = EquivalenceCheck(trace, dense, tol);
    return out;
  }
  RunTrace damaged = trace;
  for (NodeState& state : damaged.final_states) {
    if (state.empty()) continue;
    std::vector<NodeState::Entry> entries(state.entries().begin(),
                                          state.entries().end());
    entries.front().suffix += 1e-6;
    state = NodeState::FromEntries(std::move(entries));
    break;
  }
  out.equivalence = EquivalenceCheck(damaged, dense, tol);
  out.equivalence.name = "sparse-dense-corrupted";
  return out;
}

}  // namespace loadcluster
