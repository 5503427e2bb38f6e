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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "loadcluster/error.h"
#include "loadcluster/generators.h"
#include "loadcluster/graph.h"
#include "loadcluster/graph_io.h"
#include "oracles.h"

namespace loadcluster {
namespace {

std::vector<NodeId> Range(NodeId lo, NodeId hi) {
  std::vector<NodeId> out;
  for (NodeId v = lo; v < hi; ++v) out.push_back(v);
  return out;
}

Graph TwoTriangles() { return DisjointCopies(CompleteGraph(3), 2).graph; }

int CrossEdges(const Graph& g, const Partition& p) {
  int cross = 0;
  for (const Edge& e : g.edges()) {
    cross += p.cluster_of(e.u) != p.cluster_of(e.v) ? 1 : 0;
  }
  return cross;
}

TEST(GraphTest, AdjacencyIsSymmetricAndSorted) {
  const Graph g(4, {{2, 0}, {0, 1}, {3, 2}});
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(std::vector<NodeId>(g.neighbors(0).begin(), g.neighbors(0).end()),
            (std::vector<NodeId>{1, 2}));
  EXPECT_TRUE(g.HasEdge(2, 3));
  EXPECT_TRUE(g.HasEdge(3, 2));
  EXPECT_FALSE(g.HasEdge(1, 3));
  EXPECT_EQ(g.degree(2), 2);
  EXPECT_EQ(g.max_degree(), 2);
  EXPECT_EQ(g.min_degree(), 1);
}

TEST(GraphTest, RejectsOutOfRangeEndpoints) {
  try {
    Graph(3, {{0, 3}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(ValidateTest, CycleIsConnectedAndRegular) {
  const ValidationReport r = Validate(CycleGraph(4));
  EXPECT_TRUE(r.connected);
  EXPECT_TRUE(r.regular);
  ASSERT_TRUE(r.degree.has_value());
  EXPECT_EQ(*r.degree, 2);
  EXPECT_TRUE(r.simple());
  EXPECT_DOUBLE_EQ(r.degree_ratio, 1.0);
}

TEST(ValidateTest, ReportsDuplicateInBothOrientations) {
  const ValidationReport r = Validate(Graph(3, {{0, 1}, {1, 0}, {1, 2}}));
  ASSERT_EQ(r.duplicate_edges.size(), 1u);
  EXPECT_EQ(r.duplicate_edges[0], (Edge{0, 1}));
  EXPECT_FALSE(r.simple());
}

TEST(ValidateTest, ReportsExplicitSelfLoop) {
  const ValidationReport r = Validate(Graph(2, {{0, 1}, {1, 1}}));
  ASSERT_EQ(r.self_loop_edges.size(), 1u);
  EXPECT_FALSE(r.simple());
}

TEST(ValidateTest, TwoTrianglesHaveTwoComponents) {
  const Graph g = TwoTriangles();
  const ValidationReport r = Validate(g);
  EXPECT_FALSE(r.connected);
  EXPECT_EQ(r.components, 2);
  EXPECT_EQ(r.components, oracle::ComponentsByUnionFind(g));
}

TEST(ValidateTest, IsolatedNodeGivesInfiniteRatio) {
  const ValidationReport r = Validate(Graph(3, {{0, 1}}));
  EXPECT_EQ(r.min_degree, 0);
  EXPECT_TRUE(std::isinf(r.degree_ratio));
}

TEST(ComponentsTest, AgreesWithUnionFindOnRandomGraphs) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const NodeId n = 2 + static_cast<NodeId>(rng() % 20);
    std::vector<Edge> edges;
    const int m = static_cast<int>(rng() % (2 * n));
    for (int i = 0; i < m; ++i) {
      const NodeId u = static_cast<NodeId>(rng() % n);
      const NodeId v = static_cast<NodeId>(rng() % n);
      if (u != v) edges.push_back({std::min(u, v), std::max(u, v)});
    }
    const Graph g(n, edges);
    int count = 0;
    ConnectedComponents(g, &count);
    EXPECT_EQ(count, oracle::ComponentsByUnionFind(g));
  }
}

TEST(VolumeTest, CycleAdjacentPair) {
  const Graph c4 = CycleGraph(4);
  const std::vector<NodeId> s = {0, 1};
  EXPECT_EQ(Volume(c4, s, VolumeConvention::kIncidentEdges), 3);
  EXPECT_EQ(Volume(c4, s, VolumeConvention::kDegreeSum), 4);
  EXPECT_EQ(Volume(c4, {}, VolumeConvention::kIncidentEdges), 0);
  EXPECT_EQ(Volume(c4, {}, VolumeConvention::kDegreeSum), 0);
  EXPECT_EQ(CutSize(c4, s), 2);
}

TEST(VolumeTest, RejectsOutOfRangeNode) {
  const std::vector<NodeId> s = {7};
  EXPECT_THROW(Volume(CycleGraph(4), s), Error);
}

TEST(VolumeTest, LoopWeightsCountOnlyForDegreeSum) {
  const Graph lifted = LiftToRegular(PathGraph(3), 2);
  const std::vector<NodeId> end = {0};
  EXPECT_EQ(Volume(lifted, end, VolumeConvention::kDegreeSum), 2);
  EXPECT_EQ(Volume(lifted, end, VolumeConvention::kIncidentEdges), 1);
}

TEST(ConductanceTest, HandComputedValues) {
  const std::vector<NodeId> one = {0};
  for (auto conv : {VolumeConvention::kIncidentEdges, VolumeConvention::kDegreeSum}) {
    EXPECT_DOUBLE_EQ(Conductance(CompleteGraph(4), one, conv), 1.0);
  }
  const std::vector<NodeId> pair = {0, 1};
  EXPECT_DOUBLE_EQ(Conductance(CycleGraph(4), pair), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(
      Conductance(CycleGraph(4), pair, VolumeConvention::kDegreeSum), 0.5);
  const std::vector<NodeId> all = Range(0, 4);
  EXPECT_DOUBLE_EQ(Conductance(CycleGraph(4), all), 0.0);
}

TEST(ConductanceTest, DegenerateSetsAreErrors) {
  try {
    Conductance(CycleGraph(4), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
  }
  const std::vector<NodeId> isolated = {2};
  try {
    Conductance(Graph(3, {{0, 1}}), isolated);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
  }
}

TEST(ConductanceTest, UnchangedUnderDisjointDuplication) {
  Rng rng(3);
  const Graph g = RandomRegular(10, 3, rng);
  const Graph doubled = DisjointCopies(g, 2).graph;
  const std::vector<NodeId> s = {0, 3, 4, 8};
  for (auto conv : {VolumeConvention::kIncidentEdges, VolumeConvention::kDegreeSum}) {
    EXPECT_DOUBLE_EQ(Conductance(g, s, conv), Conductance(doubled, s, conv));
  }
}

TEST(PartitionTest, SizesAndBalance) {
  const Partition p(2, {0, 1, 1, 0, 1});
  EXPECT_EQ(p.num_clusters(), 2);
  EXPECT_EQ(p.sizes()[0], 2);
  EXPECT_EQ(p.sizes()[1], 3);
  EXPECT_EQ(p.Members(1), (std::vector<NodeId>{1, 2, 4}));
  EXPECT_DOUBLE_EQ(p.Balance(), 0.4);
  EXPECT_TRUE(p.IsBalanced(0.4));
  EXPECT_FALSE(p.IsBalanced(0.41));
  EXPECT_FALSE(p.HasEmptyCluster());
  EXPECT_TRUE(Partition(3, {0, 0, 2}).HasEmptyCluster());
  EXPECT_THROW(Partition(2, {0, 2}), Error);
}

TEST(LiftTest, RegularGraphUnchanged) {
  const Graph lifted = LiftToRegular(CycleGraph(5), 2);
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ(lifted.self_loop_weight(v), 0);
  EXPECT_FALSE(lifted.has_self_loop_weights());
}

TEST(LiftTest, PathAndStarLoopWeights) {
  const Graph path = LiftToRegular(PathGraph(3), 2);
  EXPECT_EQ(path.self_loop_weight(0), 1);
  EXPECT_EQ(path.self_loop_weight(1), 0);
  EXPECT_EQ(path.self_loop_weight(2), 1);
  const ValidationReport r = Validate(path);
  EXPECT_TRUE(r.lifted_regular);
  EXPECT_FALSE(r.regular);
  ASSERT_TRUE(r.lifted_degree.has_value());
  EXPECT_EQ(*r.lifted_degree, 2);

  const Graph star = LiftToRegular(StarGraph(3), 3);
  EXPECT_EQ(star.self_loop_weight(0), 0);
  for (NodeId v = 1; v <= 3; ++v) EXPECT_EQ(star.self_loop_weight(v), 2);
}

TEST(LiftTest, PreservesEdgesAndRejectsSmallBound) {
  const Graph star = StarGraph(4);
  const Graph lifted = LiftToRegular(star, 6);
  EXPECT_TRUE(std::equal(star.edges().begin(), star.edges().end(),
                         lifted.edges().begin(), lifted.edges().end()));
  EXPECT_THROW(LiftToRegular(star, 3), Error);
}

TEST(PlantedRhoTest, ComponentsGiveZero) {
  const ClusteredGraph copies = DisjointCopies(CycleGraph(5), 3);
  EXPECT_DOUBLE_EQ(PlantedRhoUpper(copies.graph, copies.partition), 0.0);
  EXPECT_DOUBLE_EQ(PlantedRhoUpper(CycleGraph(6), Partition::Single(6)), 0.0);
}

TEST(PlantedRhoTest, EmptyClusterAndSizeMismatchAreErrors) {
  EXPECT_THROW(PlantedRhoUpper(CycleGraph(3), Partition(2, {0, 0, 0})), Error);
  EXPECT_THROW(PlantedRhoUpper(CycleGraph(3), Partition(1, {0, 0})), Error);
}

TEST(GeneratorTest, SmallClusteredInstance) {
  Rng rng(11);
  const ClusteredGraph cg = MakeClusteredRegular(12, 2, 3, 1, rng);
  const ValidationReport r = Validate(cg.graph);
  EXPECT_TRUE(r.regular);
  EXPECT_TRUE(r.simple());
  EXPECT_EQ(*r.degree, 3);
  EXPECT_EQ(CrossEdges(cg.graph, cg.partition), 2);
  // Each side: 6 nodes, 9 - 1 internal edges after the swap plus 2 cut edges.
  const std::vector<NodeId> side = cg.partition.Members(0);
  EXPECT_EQ(Volume(cg.graph, side), 10);
  EXPECT_DOUBLE_EQ(PlantedRhoUpper(cg.graph, cg.partition), 2.0 / 10.0);
  EXPECT_DOUBLE_EQ(
      PlantedRhoUpper(cg.graph, cg.partition, VolumeConvention::kDegreeSum),
      2.0 / 18.0);
}

TEST(GeneratorTest, SingleClusterIsOneCubicGraph) {
  Rng rng(5);
  const ClusteredGraph cg = MakeClusteredRegular(8, 1, 3, 0, rng);
  EXPECT_EQ(cg.partition.num_clusters(), 1);
  EXPECT_TRUE(Validate(cg.graph).connected);
  EXPECT_EQ(*Validate(cg.graph).degree, 3);
}

TEST(GeneratorTest, LargeInstanceHasExpectedPlantedConductance) {
  Rng rng(1);
  const ClusteredGraph cg = MakeClusteredRegular(500, 2, 16, 5, rng);
  EXPECT_EQ(CrossEdges(cg.graph, cg.partition), 10);
  EXPECT_DOUBLE_EQ(
      PlantedRhoUpper(cg.graph, cg.partition, VolumeConvention::kDegreeSum),
      10.0 / (16.0 * 250.0));
}

TEST(GeneratorTest, PropertiesHoldAcrossSeeds) {
  struct Params {
    NodeId n;
    int k;
    int d;
    int swaps;
  };
  for (const Params& p : {Params{12, 2, 3, 1}, Params{30, 3, 4, 5},
                          Params{40, 4, 5, 6}, Params{60, 2, 6, 20}}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(seed);
      const ClusteredGraph cg =
          MakeClusteredRegular(p.n, p.k, p.d, p.swaps, rng);
      const ValidationReport r = Validate(cg.graph);
      EXPECT_TRUE(r.simple());
      EXPECT_TRUE(r.regular);
      EXPECT_EQ(*r.degree, p.d);
      EXPECT_EQ(CrossEdges(cg.graph, cg.partition), 2 * p.swaps);
      for (int c = 0; c < p.k; ++c) {
        const std::vector<NodeId> members = cg.partition.Members(c);
        std::vector<Edge> inside;
        std::vector<int> local(p.n, -1);
        for (std::size_t i = 0; i < members.size(); ++i) {
          local[members[i]] = static_cast<int>(i);
        }
        for (const Edge& e : cg.graph.edges()) {
          if (local[e.u] >= 0 && local[e.v] >= 0) {
            inside.push_back({local[e.u], local[e.v]});
          }
        }
        EXPECT_EQ(oracle::ComponentsByUnionFind(
                      Graph(static_cast<NodeId>(members.size()), inside)),
                  1);
      }
    }
  }
}

TEST(GeneratorTest, SameSeedSameGraph) {
  Rng a(42);
  Rng b(42);
  const ClusteredGraph x = MakeClusteredRegular(40, 2, 4, 3, a);
  const ClusteredGraph y = MakeClusteredRegular(40, 2, 4, 3, b);
  EXPECT_EQ(FormatEdgeList(x.graph), FormatEdgeList(y.graph));
}

TEST(GeneratorTest, InfeasibleParametersAreErrors) {
  Rng rng(1);
  auto code_of = [&](NodeId n, int k, int d, int swaps) {
    try {
      MakeClusteredRegular(n, k, d, swaps, rng);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;  // Not expected.
  };
  EXPECT_EQ(code_of(13, 2, 3, 0), ErrorCode::kInvalidArgument);  // n % k
  EXPECT_EQ(code_of(8, 2, 4, 0), ErrorCode::kInvalidArgument);   // n/k <= d
  EXPECT_EQ(code_of(10, 2, 3, 0), ErrorCode::kInvalidArgument);  // odd stubs
  EXPECT_EQ(code_of(12, 2, 3, 100), ErrorCode::kInvalidArgument);
}

TEST(GeneratorTest, RandomRegularIsSimpleConnectedRegular) {
  Rng rng(9);
  for (int d = 3; d <= 6; ++d) {
    const Graph g = RandomRegular(20, d, rng);
    const ValidationReport r = Validate(g);
    EXPECT_TRUE(r.simple());
    EXPECT_TRUE(r.connected);
    EXPECT_EQ(*r.degree, d);
  }
}

TEST(GeneratorTest, FixedFamilies) {
  EXPECT_EQ(CompleteGraph(5).num_edges(), 10u);
  EXPECT_EQ(*Validate(PrismGraph()).degree, 3);
  EXPECT_EQ(*Validate(CompleteBipartiteGraph(3, 3)).degree, 3);
  EXPECT_EQ(Validate(PathGraph(4)).max_degree, 2);
  EXPECT_EQ(StarGraph(3).degree(0), 3);
  EXPECT_EQ(DisjointUnion(CycleGraph(3), PathGraph(2)).num_nodes(), 5);
}

TEST(GraphIoTest, EdgeListRoundTrip) {
  Rng rng(2);
  const ClusteredGraph cg = MakeClusteredRegular(12, 2, 3, 1, rng);
  const std::string text = FormatEdgeList(cg.graph);
  const Graph back = ParseEdgeList(text);
  EXPECT_EQ(FormatEdgeList(back), text);
  EXPECT_TRUE(Validate(back).regular);
  EXPECT_EQ(text.substr(0, text.find('\n')), "12 18");
  const Partition p = ParsePartition(FormatPartition(cg.partition));
  EXPECT_EQ(std::vector<int>(p.assignment().begin(), p.assignment().end()),
            std::vector<int>(cg.partition.assignment().begin(),
                             cg.partition.assignment().end()));
}

TEST(GraphIoTest, MalformedInputIsParseError) {
  for (const char* bad : {"", "3", "3 2\n0 1\n", "3 1\n0 x\n", "2 1\n0 5\n"}) {
    try {
      ParseEdgeList(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kParse ||
                  e.code() == ErrorCode::kOutOfRange)
          << bad;
    }
  }
  EXPECT_THROW(ParsePartition("0\n-1\n"), Error);
}

TEST(GraphIoTest, MissingFileIsIoError) {
  try {
    ReadFile("/nonexistent/graph.edges");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace loadcluster
