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

#ifndef LOADCLUSTER_GENERATORS_H_
#define LOADCLUSTER_GENERATORS_H_

#include <vector>

#include "loadcluster/graph.h"
#include "loadcluster/rng.h"

namespace loadcluster {

struct ClusteredGraph {
  Graph graph;
  Partition partition;
};

// Rejection attempts allowed per cross-cluster swap, and restarts allowed for
// each per-cluster random regular graph.
inline constexpr int kSwapRetryBudget = 100;
inline constexpr int kRegularRestartBudget = 100;

// Random simple connected d-regular graph on `num_nodes` nodes. Stubs are
// paired one at a time, rejecting pairs that would form a loop or a parallel
// edge; a dead end (no admissible pair left) or a disconnected result
// restarts the construction.
Graph RandomRegular(NodeId num_nodes, int d, Rng& rng);

// k planted clusters of n/k nodes, each an independent random d-regular
// graph, followed by `cross_swaps` degree-preserving 2-edge swaps that each
// take an intra-cluster edge from two distinct clusters and rewire them
// across. Cluster c owns nodes [c * n/k, (c + 1) * n/k). The result is
// d-regular and simple with exactly 2 * cross_swaps inter-cluster edges, and
// every cluster stays internally connected.
//
// Errors: kInvalidArgument for infeasible parameters, kBudgetExhausted when
// the rejection budgets run out.
ClusteredGraph MakeClusteredRegular(NodeId n, int k, int d, int cross_swaps,
                                    Rng& rng);

// Deterministic fixtures.
Graph CompleteGraph(NodeId n);
Graph CycleGraph(NodeId n);
Graph PathGraph(NodeId n);
Graph StarGraph(NodeId leaves);
Graph CompleteBipartiteGraph(NodeId left, NodeId right);
// Triangular prism: two triangles joined by three rungs (cubic, 6 nodes).
Graph PrismGraph();
// Nodes of `b` are shifted by a.num_nodes().
Graph DisjointUnion(const Graph& a, const Graph& b);
// `copies` disjoint copies of g, with the partition into copies.
ClusteredGraph DisjointCopies(const Graph& g, int copies);

}  // namespace loadcluster

#endif  // LOADCLUSTER_GENERATORS_H_
