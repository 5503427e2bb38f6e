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

#include "loadcluster/fixtures.h"

#include <utility>

#include "loadcluster/generators.h"

namespace loadcluster {
namespace {

Fixture Make(std::string name, Graph g) {
  const ValidationReport report = Validate(g);
  ProtocolVariant variant = report.regular
                                ? ProtocolVariant::Regular()
                                : ProtocolVariant::AlmostRegular(g.max_degree());
  return {std::move(name), std::move(g), variant};
}

}  // namespace

Graph Fixture::WalkGraph() const {
  return variant.emulated() ? LiftToRegular(graph, variant.lift_degree)
                            : graph;
}

Graph PetersenGraph() {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({i + 5, (i + 2) % 5 + 5});
  }
  return Graph(10, edges);
}

Graph HypercubeGraph(int dim) {
  const NodeId n = NodeId{1} << dim;
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    for (int b = 0; b < dim; ++b) {
      const NodeId w = v ^ (NodeId{1} << b);
      if (v < w) edges.push_back({v, w});
    }
  }
  return Graph(n, edges);
}

std::vector<Fixture> SmallFixtures() {
  std::vector<Fixture> out;
  out.push_back(Make("K2", CompleteGraph(2)));
  out.push_back(Make("K3", CompleteGraph(3)));
  out.push_back(Make("K4", CompleteGraph(4)));
  out.push_back(Make("C4", CycleGraph(4)));
  out.push_back(Make("C5", CycleGraph(5)));
  out.push_back(Make("C6", CycleGraph(6)));
  out.push_back(Make("prism", PrismGraph()));
  out.push_back(Make("K3,3", CompleteBipartiteGraph(3, 3)));
  out.push_back(Make("2xK2", DisjointCopies(CompleteGraph(2), 2).graph));
  out.push_back(Make("2xK3", DisjointCopies(CompleteGraph(3), 2).graph));
  out.push_back(Make("P3", PathGraph(3)));
  out.push_back(Make("P4", PathGraph(4)));
  out.push_back(Make("star3", StarGraph(3)));
  return out;
}

std::vector<Fixture> BruteForceFixtures() {
  std::vector<Fixture> out = SmallFixtures();
  out.push_back(Make("K5", CompleteGraph(5)));
  for (NodeId n = 7; n <= 10; ++n) {
    out.push_back(Make("C" + std::to_string(n), CycleGraph(n)));
  }
  out.push_back(Make("cube", HypercubeGraph(3)));
  out.push_back(Make("petersen", PetersenGraph()));
  out.push_back(Make("P6", PathGraph(6)));
  out.push_back(Make("2xC5", DisjointCopies(CycleGraph(5), 2).graph));
  // Two K4 blocks with one swap between them: cubic, 8 nodes.
  Graph bridged(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 3},
                    {3, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
  out.push_back(Make("2xK4-swapped", std::move(bridged)));
  return out;
}

}  // namespace loadcluster
