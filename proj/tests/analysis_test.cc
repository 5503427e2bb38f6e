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

#include "loadcluster/analysis.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "loadcluster/error.h"
#include "loadcluster/generators.h"
#include "loadcluster/graph.h"
#include "loadcluster/rng.h"
#include "oracles.h"

namespace loadcluster {
namespace {

ProtocolConfig Config(std::uint64_t seed) {
  ProtocolConfig cfg;
  cfg.seed = seed;
  return cfg;
}

// Labels equal to planted cluster + 1, all labeled.
std::vector<SeedId> PlantedLabels(const Partition& p) {
  std::vector<SeedId> labels(p.num_nodes());
  for (NodeId v = 0; v < p.num_nodes(); ++v) labels[v] = p.cluster_of(v) + 1;
  return labels;
}

TEST(DenseEvolutionTest, NoRoundsGivesIndicators) {
  const std::vector<ActiveSeed> seeds = {{2, 17}, {0, 30}};
  const DenseEvolution d = EvolveDense(CycleGraph(4), seeds, {});
  ASSERT_EQ(d.per_round.size(), 1u);
  const Matrix& x = d.final_loads();
  ASSERT_EQ(x.rows(), 2u);
  for (int v = 0; v < 4; ++v) {
    EXPECT_EQ(x(0, v), v == 2 ? 1.0 : 0.0);
    EXPECT_EQ(x(1, v), v == 0 ? 1.0 : 0.0);
  }
}

TEST(DenseEvolutionTest, RejectsForeignMatching) {
  Matching m(4);
  m.Add(0, 2);
  try {
    EvolveDense(CycleGraph(4), std::vector<ActiveSeed>{{0, 1}}, {&m, 1});
    FAIL() << "expected a mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMismatch);
  }
}

TEST(DenseEvolutionTest, MatchesSparseRun) {
  Rng rng(50);
  const ClusteredGraph cg = MakeClusteredRegular(50, 2, 6, 3, rng);
  int runs_with_seeds = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RunTrace t = RunProtocol(cg.graph, Config(seed), 100);
    runs_with_seeds += !t.seeds.empty();
    const DenseEvolution d = EvolveDense(cg.graph, t.seeds, t.matchings);
    EXPECT_EQ(d.per_round.size(), 101u);
    const CheckResult eq = EquivalenceCheck(t, d, 1e-12);
    EXPECT_TRUE(eq.passed) << eq.detail;
    EXPECT_TRUE(MassConservation(d).passed);
    const DenseEvolution last =
        EvolveDense(cg.graph, t.seeds, t.matchings, false);
    EXPECT_EQ(last.per_round.size(), 1u);
    EXPECT_EQ(MaxAbsDiff(last.final_loads(), d.final_loads()), 0.0);
  }
  EXPECT_GT(runs_with_seeds, 5);
}

TEST(DenseEvolutionTest, CorruptedStateIsPinpointed) {
  Rng rng(51);
  const ClusteredGraph cg = MakeClusteredRegular(40, 2, 4, 2, rng);
  for (std::uint64_t seed = 1;; ++seed) {
    RunTrace t = RunProtocol(cg.graph, Config(seed), 30);
    if (t.seeds.empty()) continue;
    const DenseEvolution d = EvolveDense(cg.graph, t.seeds, t.matchings);
    NodeId v = 0;
    while (t.final_states[v].empty()) ++v;
    std::vector<NodeState::Entry> e(t.final_states[v].entries().begin(),
                                    t.final_states[v].entries().end());
    e[0].suffix += 1e-6;
    t.final_states[v] = NodeState::FromEntries(e);
    const CheckResult r = EquivalenceCheck(t, d, 1e-12);
    EXPECT_FALSE(r.passed);
    EXPECT_NE(r.detail.find("node " + std::to_string(v)), std::string::npos)
        << r.detail;
    EXPECT_NEAR(r.observed, 1e-6, 1e-9);
    break;
  }
}

TEST(DenseEvolutionTest, EmptySeedSetPasses) {
  RunTrace t;
  t.final_states.resize(4);
  const DenseEvolution d = EvolveDense(CycleGraph(4), {}, {});
  EXPECT_TRUE(EquivalenceCheck(t, d).passed);
}

TEST(DenseEvolutionTest, NormNonIncreasingAndOrthogonalSplit) {
  Rng rng(52);
  const ClusteredGraph cg = MakeClusteredRegular(60, 3, 5, 4, rng);
  const Spectrum spec = GraphSpectrum(cg.graph);
  std::vector<Matching> ms;
  for (int t = 0; t < 60; ++t) {
    ms.push_back(SampleMatching(cg.graph, ProtocolVariant::Regular(), rng));
  }
  const DenseEvolution d =
      EvolveDense(cg.graph, std::vector<ActiveSeed>{{7, 1}}, ms);
  double prev = 1.0;
  for (const Matrix& x : d.per_round) {
    const auto y = x.row(0);
    const double norm = Norm(y);
    EXPECT_LE(norm, prev + 1e-15);
    prev = norm;
    const std::vector<double> qy = ProjectTopK(spec, 3, y);
    std::vector<double> rest(y.begin(), y.end());
    for (std::size_t v = 0; v < rest.size(); ++v) rest[v] -= qy[v];
    const double a = Norm(qy);
    const double b = Norm(rest);
    EXPECT_NEAR(a * a + b * b, norm * norm, 1e-10);
  }
}

TEST(ConvergenceTraceTest, DisconnectedConvergesToComponentAverage) {
  const ClusteredGraph cg = DisjointCopies(CompleteGraph(6), 2);
  const Spectrum spec = GraphSpectrum(cg.graph);
  MonteCarloOptions opts;
  opts.runs = 20;
  const ConvergenceTrace tr = ConvergenceTraceFrom(cg.graph, spec, 2, 0, 200, opts);
  ASSERT_EQ(tr.points.size(), 201u);
  EXPECT_EQ(tr.points[0].t, 0);
  EXPECT_EQ(tr.points[0].bound, 0.0);
  // Round zero: ||Q chi_v - chi_v|| = ||Q_perp chi_v||.
  EXPECT_NEAR(tr.points[0].dist_q, std::sqrt(1.0 - 1.0 / 6.0), 1e-12);
  EXPECT_NEAR(tr.q_norm, std::sqrt(1.0 / 6.0), 1e-12);
  EXPECT_LT(tr.points.back().dist_q, 1e-6);
  EXPECT_TRUE(ConvergenceBoundCheck(tr).passed);
}

TEST(ConvergenceTraceTest, TraceInvariantsAndDeterminism) {
  Rng rng(53);
  const ClusteredGraph cg = MakeClusteredRegular(80, 2, 8, 3, rng);
  const Spectrum spec = GraphSpectrum(cg.graph);
  MonteCarloOptions opts;
  opts.runs = 30;
  opts.jobs = 3;
  const ConvergenceTrace a = ConvergenceTraceFrom(cg.graph, spec, 2, 5, 40, opts);
  opts.jobs = 1;
  const ConvergenceTrace b = ConvergenceTraceFrom(cg.graph, spec, 2, 5, 40, opts);
  for (std::size_t t = 0; t < a.points.size(); ++t) {
    const ConvergencePoint& p = a.points[t];
    EXPECT_EQ(p.dist_q, b.points[t].dist_q);
    EXPECT_GE(p.dist_q, 0.0);
    EXPECT_GE(p.bound, 0.0);
    EXPECT_NEAR(p.bound, 2 * p.bound_tight, 1e-15);
    EXPECT_NEAR(p.bound_tight,
                std::sqrt(p.t * (1 - spec.lambda(2))) * a.q_norm, 1e-12);
    if (t > 0) {
      EXPECT_GE(p.bound, a.points[t - 1].bound);
    }
  }
  EXPECT_TRUE(ConvergenceBoundCheck(a).passed);
}

TEST(ClusterDistanceTest, DisconnectedIsExact) {
  const ClusteredGraph cg = DisjointCopies(CompleteGraph(5), 2);
  const Spectrum spec = GraphSpectrum(cg.graph);
  const ClusterBasis basis = ComputeClusterBasis(spec, cg.partition);
  const GoodNodeResult good = ClassifyGoodNodes(basis, 1.0, 0.5, 10);
  MonteCarloOptions opts;
  opts.runs = 10;
  const ClusterDistanceResult r =
      ClusterDistanceCheck(cg.graph, cg.partition, basis, good, 3, 0.5, 300, 10.0, opts);
  EXPECT_EQ(r.reference_scale, 0.0);
  EXPECT_LT(r.mean_dist, 1e-9);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.node_good);
}

TEST(ClusterDistanceTest, DistanceGrowsWithCrossEdges) {
  std::vector<double> dist;
  for (int swaps : {1, 5, 25}) {
    Rng rng(54);
    const ClusteredGraph cg = MakeClusteredRegular(200, 2, 8, swaps, rng);
    const Spectrum spec = GraphSpectrum(cg.graph);
    const ClusterBasis basis = ComputeClusterBasis(spec, cg.partition);
    const GoodNodeResult good = ClassifyGoodNodes(basis, 1.0, 0.5, 200);
    const int rounds = RoundsForGap(5.0, 200, spec.lambda(3));
    MonteCarloOptions opts;
    opts.runs = 40;
    const ClusterDistanceResult r = ClusterDistanceCheck(cg.graph, cg.partition, basis, good,
                                       good.good_nodes.front(), 0.5, rounds,
                                       10.0, opts);
    EXPECT_GT(r.reference_scale, 0.0);
    EXPECT_NEAR(r.ratio, r.mean_dist / r.reference_scale, 1e-12);
    dist.push_back(r.mean_dist);
  }
  EXPECT_LT(dist[0], dist[1]);
  EXPECT_LT(dist[1], dist[2]);
}

TEST(ClusterDistanceTest, BadNodeWarns) {
  Rng rng(55);
  const ClusteredGraph cg = MakeClusteredRegular(60, 2, 4, 20, rng);
  const Spectrum spec = GraphSpectrum(cg.graph);
  const ClusterBasis basis = ComputeClusterBasis(spec, cg.partition);
  const GoodNodeResult good = ClassifyGoodNodes(basis, 1e-3, 0.5, 60);
  ASSERT_GT(good.bad_count, 0);
  NodeId bad = 0;
  while (good.good[bad]) ++bad;
  MonteCarloOptions opts;
  opts.runs = 5;
  const ClusterDistanceResult r =
      ClusterDistanceCheck(cg.graph, cg.partition, basis, good, bad, 0.5, 20, 10.0, opts);
  EXPECT_FALSE(r.node_good);
  EXPECT_FALSE(r.warning.empty());
}

TEST(MisclassificationTest, Examples) {
  const Partition p(2, {0, 0, 0, 1, 1, 1});
  const std::vector<char> all(6, 1);
  EXPECT_EQ(Misclassification(PlantedLabels(p), all, p).count, 0);
  const std::vector<SeedId> swapped = {9, 9, 9, 4, 4, 4};
  EXPECT_EQ(Misclassification(swapped, all, p).count, 0);
  const std::vector<SeedId> flipped = {1, 1, 2, 2, 2, 2};
  const MisclassificationResult r = Misclassification(flipped, all, p);
  EXPECT_EQ(r.count, 1);
  EXPECT_DOUBLE_EQ(r.fraction, 1.0 / 6.0);
  EXPECT_FALSE(r.heuristic);
}

TEST(MisclassificationTest, UnlabeledCountedAndReported) {
  const Partition p(2, {0, 0, 0, 1, 1, 1});
  const std::vector<SeedId> labels = {1, 1, kUnlabeled, 2, 2, 2};
  const std::vector<char> labeled = {1, 1, 0, 1, 1, 1};
  const MisclassificationResult r = Misclassification(labels, labeled, p);
  EXPECT_EQ(r.count, 1);
  EXPECT_EQ(r.unlabeled, 1);
  EXPECT_EQ(r.lenient_count, 0);
}

TEST(MisclassificationTest, MoreLabelsThanClusters) {
  const Partition p(2, {0, 0, 0, 1, 1, 1});
  const std::vector<SeedId> labels = {1, 1, 3, 2, 2, 2};
  const std::vector<char> all(6, 1);
  const MisclassificationResult r = Misclassification(labels, all, p);
  EXPECT_EQ(r.count, 1);
  int unmapped = 0;
  for (const auto& [label, cluster] : r.mapping) unmapped += cluster == -1;
  EXPECT_EQ(unmapped, 1);
}

TEST(MisclassificationTest, InvariantUnderRelabeling) {
  Rng rng(60);
  std::uniform_int_distribution<int> cl(0, 3);
  std::uniform_int_distribution<int> lab(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a(40);
    for (int& x : a) x = cl(rng);
    const Partition p(4, a);
    std::vector<SeedId> labels(40);
    for (SeedId& l : labels) l = 10 + lab(rng);
    std::vector<char> labeled(40, 1);
    const NodeId base = Misclassification(labels, labeled, p).count;
    std::vector<SeedId> names = {101, 7, 55, 3, 999};
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<SeedId> renamed(40);
    for (int v = 0; v < 40; ++v) renamed[v] = names[labels[v] - 10];
    EXPECT_EQ(Misclassification(renamed, labeled, p).count, base);
  }
}

TEST(MisclassificationTest, ExactMatchesPermutationOracle) {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 4;
    const int labels_used = 1 + trial % 6;
    std::uniform_int_distribution<int> cl(0, k - 1);
    std::uniform_int_distribution<int> lab(1, labels_used);
    std::bernoulli_distribution drop(0.1);
    std::vector<int> a(30);
    for (int& x : a) x = cl(rng);
    const Partition p(k, a);
    std::vector<SeedId> labels(30);
    std::vector<char> labeled(30);
    for (int v = 0; v < 30; ++v) {
      labeled[v] = !drop(rng);
      labels[v] = labeled[v] ? lab(rng) : kUnlabeled;
    }
    EXPECT_EQ(Misclassification(labels, labeled, p).count,
              oracle::MisclassificationByPermutation(labels, labeled, p))
        << "trial " << trial;
  }
}

TEST(MisclassificationTest, GreedyAgreesNearPlanted) {
  Rng rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 7;
    std::vector<int> a(200);
    for (int v = 0; v < 200; ++v) a[v] = v % k;
    const Partition p(k, a);
    // Planted labels under a random renaming, with 10% noise.
    std::vector<SeedId> names(k);
    std::iota(names.begin(), names.end(), 1);
    std::shuffle(names.begin(), names.end(), rng);
    std::bernoulli_distribution noise(0.1);
    std::uniform_int_distribution<int> any(0, k - 1);
    std::vector<SeedId> labels(200);
    for (int v = 0; v < 200; ++v) {
      labels[v] = names[noise(rng) ? any(rng) : a[v]];
    }
    const std::vector<char> labeled(200, 1);
    const MisclassificationResult exact = Misclassification(labels, labeled, p);
    const MisclassificationResult greedy =
        Misclassification(labels, labeled, p, true);
    EXPECT_TRUE(greedy.heuristic);
    EXPECT_EQ(exact.count, greedy.count) << "trial " << trial;
  }
}

TEST(MisclassificationTest, ManyLabelsUseHeuristic) {
  std::vector<int> a(100);
  for (int v = 0; v < 100; ++v) a[v] = v / 10;
  const Partition p(10, a);
  std::vector<SeedId> labels(100);
  for (int v = 0; v < 100; ++v) labels[v] = 1000 - a[v];
  const MisclassificationResult r =
      Misclassification(labels, std::vector<char>(100, 1), p);
  EXPECT_TRUE(r.heuristic);
  EXPECT_EQ(r.count, 0);
}

TEST(CoverageTest, CountsSeededClusters) {
  const Partition p(3, {0, 0, 1, 1, 2, 2});
  const std::vector<ActiveSeed> seeds = {{0, 5}, {1, 6}, {4, 9}};
  const SeedCoverage c = Coverage(seeds, p);
  EXPECT_EQ(c.seeded_clusters, 2);
  EXPECT_FALSE(c.all_seeded);
  EXPECT_EQ(c.per_cluster, (std::vector<int>{2, 0, 1}));
  const std::vector<ActiveSeed> full = {{0, 5}, {3, 6}, {4, 9}};
  EXPECT_TRUE(Coverage(full, p).all_seeded);
}

// Exact probability that seeding hits both halves of a two-cluster
// partition: each node is a seed with probability 1 - (1 - 1/n)^trials.
double BothHalvesSeeded(NodeId n, int trials) {
  const double miss_half = std::pow(1.0 - 1.0 / n, trials * n / 2.0);
  return 1.0 - 2.0 * miss_half + miss_half * miss_half;
}

Partition Alternating(NodeId n) {
  std::vector<int> a(n);
  for (NodeId v = 0; v < n; ++v) a[v] = v % 2;
  return Partition(2, a);
}

TEST(CoverageTest, ProbabilityAboveSeedingBound) {
  const CoverageProbability c =
      SeedCoverageProbability(Alternating(200), 0.4, 1000, 3, 2);
  EXPECT_EQ(c.executions, 1000);
  EXPECT_NEAR(c.bound, 1 - std::exp(-3.0), 1e-15);
  EXPECT_NEAR(c.sigma,
              std::sqrt(c.fraction * (1 - c.fraction) / c.executions), 1e-15);
  EXPECT_TRUE(c.passed) << c.fraction;
  const double p = BothHalvesSeeded(200, SeedingTrials(0.4));
  EXPECT_NEAR(c.fraction, p, 3 * std::sqrt(p * (1 - p) / 1000));
  const CoverageProbability again =
      SeedCoverageProbability(Alternating(200), 0.4, 1000, 3, 1);
  EXPECT_EQ(again.covered, c.covered);
}

// With beta = 1/2 there are 5 trials per node and each half stays unseeded
// with probability about e^-2.5, so the 1 - e^-3 bound is out of reach.
TEST(CoverageTest, EvenSplitFallsShortOfSeedingBound) {
  const CoverageProbability c =
      SeedCoverageProbability(Alternating(200), 0.5, 1000, 3, 2);
  const double p = BothHalvesSeeded(200, 5);
  EXPECT_LT(p, 1 - std::exp(-3.0));
  EXPECT_NEAR(c.fraction, p, 3 * std::sqrt(p * (1 - p) / 1000));
  EXPECT_FALSE(c.passed);
}

TEST(ClusteringReportTest, WordsWithinCountingBound) {
  Rng rng(63);
  const ClusteredGraph cg = MakeClusteredRegular(120, 2, 6, 3, rng);
  const Spectrum spec = GraphSpectrum(cg.graph);
  const ClusterBasis basis = ComputeClusterBasis(spec, cg.partition);
  const GoodNodeResult good = ClassifyGoodNodes(basis, 1.0, 0.5, 120);
  const GapReport gap = ComputeGapReport(cg.graph, cg.partition, spec,
                                         VolumeConvention::kIncidentEdges);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RunTrace t = RunProtocol(cg.graph, Config(seed), gap.rounds);
    const ClusteringReport r = BuildClusteringReport(t, cg.partition, &good, gap);
    EXPECT_EQ(r.n, 120);
    EXPECT_EQ(r.k, 2);
    EXPECT_EQ(r.seeds, static_cast<int>(t.seeds.size()));
    EXPECT_DOUBLE_EQ(r.word_bound, gap.rounds * 120.0 * 5);
    EXPECT_LE(r.words_over_bound, 1.0);
    EXPECT_EQ(r.seed_quality.size(), t.seeds.size());
    if (r.coverage.all_seeded) {
      EXPECT_EQ(r.coverage.seeded_clusters, 2);
    }
    const ClusteringReport no_basis =
        BuildClusteringReport(t, cg.partition, nullptr, std::nullopt, "none");
    for (const SeedQuality& q : no_basis.seed_quality) EXPECT_FALSE(q.good);
    EXPECT_EQ(no_basis.gap_error, "none");
  }
}

}  // namespace
}  // namespace loadcluster
