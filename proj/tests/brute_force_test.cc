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

#include <gtest/gtest.h>

#include <vector>

#include "loadcluster/error.h"
#include "loadcluster/fixtures.h"
#include "loadcluster/generators.h"
#include "loadcluster/graph.h"
#include "oracles.h"

namespace loadcluster {
namespace {

constexpr VolumeConvention kLiteral = VolumeConvention::kIncidentEdges;
constexpr VolumeConvention kDegree = VolumeConvention::kDegreeSum;

Graph TrianglesJoinedByEdge() {
  return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

TEST(BruteForceRhoTest, JoinedTrianglesSplitAtTheBridge) {
  const RhoResult r = BruteForceRho(TrianglesJoinedByEdge(), 2, kDegree);
  EXPECT_DOUBLE_EQ(r.value, 1.0 / 7.0);
  const Partition& p = r.partition;
  EXPECT_EQ(p.cluster_of(0), p.cluster_of(1));
  EXPECT_EQ(p.cluster_of(1), p.cluster_of(2));
  EXPECT_EQ(p.cluster_of(3), p.cluster_of(4));
  EXPECT_EQ(p.cluster_of(4), p.cluster_of(5));
  EXPECT_NE(p.cluster_of(0), p.cluster_of(3));
  // 2^5 - 1 bipartitions.
  EXPECT_EQ(r.partitions_examined, 31u);
}

TEST(BruteForceRhoTest, SingleBlockIsZero) {
  const RhoResult r = BruteForceRho(PetersenGraph(), 1);
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  EXPECT_EQ(r.partition.num_clusters(), 1);
}

TEST(BruteForceRhoTest, CompleteGraphOnFourNodes) {
  // Best split is 2|2: cut 4, degree-sum volume 6, literal volume 5.
  EXPECT_DOUBLE_EQ(BruteForceRho(CompleteGraph(4), 2, kDegree).value, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(BruteForceRho(CompleteGraph(4), 2, kLiteral).value, 0.8);
}

TEST(BruteForceRhoTest, MatchesLabelingOracleOnFixtures) {
  for (const Fixture& f : BruteForceFixtures()) {
    if (Validate(f.graph).max_degree == 0) continue;
    for (int k = 2; k <= 3 && k <= f.graph.num_nodes(); ++k) {
      for (auto conv : {kLiteral, kDegree}) {
        const double expected =
            oracle::RhoByLabelings(f.graph, k, conv == kDegree);
        EXPECT_NEAR(BruteForceRho(f.graph, k, conv).value, expected, 1e-15)
            << f.name << " k=" << k;
      }
    }
  }
}

TEST(BruteForceRhoTest, MatchesLabelingOracleOnLiftedFixtures) {
  for (const Fixture& f : BruteForceFixtures()) {
    if (!f.variant.emulated()) continue;
    const Graph w = f.WalkGraph();
    for (int k = 2; k <= 3 && k <= w.num_nodes(); ++k) {
      for (auto conv : {kLiteral, kDegree}) {
        EXPECT_NEAR(BruteForceRho(w, k, conv).value,
                    oracle::RhoByLabelings(w, k, conv == kDegree), 1e-15)
            << f.name << " k=" << k;
      }
    }
  }
}

TEST(BruteForceRhoTest, NeverAbovePlantedPartition) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed);
    const ClusteredGraph cg = MakeClusteredRegular(8, 2, 3, 1 + seed % 3, rng);
    for (auto conv : {kLiteral, kDegree}) {
      EXPECT_LE(BruteForceRho(cg.graph, 2, conv).value,
                PlantedRhoUpper(cg.graph, cg.partition, conv));
    }
  }
}

TEST(BruteForceRhoTest, RefusesLargeGraphsAndBadK) {
  try {
    BruteForceRho(CycleGraph(kBruteForceMaxNodes + 1), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
  EXPECT_THROW(BruteForceRho(CycleGraph(4), 0), Error);
  EXPECT_THROW(BruteForceRho(CycleGraph(4), 5), Error);
}

}  // namespace
}  // namespace loadcluster
