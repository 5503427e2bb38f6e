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

#include "loadcluster/generators.h"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>

#include "loadcluster/error.h"

namespace loadcluster {
namespace {

std::uint64_t EdgeKey(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

Edge Normalized(NodeId u, NodeId v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

bool Connected(NodeId n, const std::vector<std::vector<NodeId>>& adj,
               NodeId first) {
  if (n == 0) return true;
  std::vector<char> seen(adj.size(), 0);
  std::queue<NodeId> frontier;
  frontier.push(first);
  seen[first] = 1;
  NodeId reached = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (NodeId w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

// One pairing attempt; returns false on a dead end.
bool TryPairing(NodeId m, int d, Rng& rng, std::vector<Edge>& edges) {
  edges.clear();
  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(m) * d);
  for (NodeId v = 0; v < m; ++v) {
    for (int i = 0; i < d; ++i) stubs.push_back(v);
  }
  std::unordered_set<std::uint64_t> present;
  while (!stubs.empty()) {
    const std::size_t remaining = stubs.size();
    std::uniform_int_distribution<std::size_t> pick(0, remaining - 1);
    bool paired = false;
    const std::size_t attempts = 50 * remaining + 100;
    for (std::size_t a = 0; a < attempts && !paired; ++a) {
      std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      if (i == j) continue;
      const NodeId u = stubs[i];
      const NodeId v = stubs[j];
      if (u == v || present.count(EdgeKey(u, v))) continue;
      present.insert(EdgeKey(u, v));
      edges.push_back(Normalized(u, v));
      if (i < j) std::swap(i, j);
      stubs[i] = stubs.back();
      stubs.pop_back();
      stubs[j] = stubs.back();
      stubs.pop_back();
      paired = true;
    }
    if (paired) continue;
    // Random probing failed; check exhaustively whether any pair is legal.
    bool any = false;
    for (std::size_t i = 0; i < remaining && !any; ++i) {
      for (std::size_t j = i + 1; j < remaining; ++j) {
        if (stubs[i] != stubs[j] &&
            !present.count(EdgeKey(stubs[i], stubs[j]))) {
          any = true;
          break;
        }
      }
    }
    if (!any) return false;
  }
  return true;
}

void CheckRegularParameters(NodeId m, int d) {
  if (d < 1) Fail(ErrorCode::kInvalidArgument, "degree must be >= 1");
  if (m <= d) {
    Fail(ErrorCode::kInvalidArgument,
         "a simple " + std::to_string(d) + "-regular graph needs more than " +
             std::to_string(d) + " nodes, got " + std::to_string(m));
  }
  if ((static_cast<std::int64_t>(m) * d) % 2 != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "nodes * degree must be even (" + std::to_string(m) + " * " +
             std::to_string(d) + ")");
  }
}

std::vector<Edge> RandomRegularEdges(NodeId m, int d, Rng& rng) {
  CheckRegularParameters(m, d);
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < kRegularRestartBudget; ++attempt) {
    if (!TryPairing(m, d, rng, edges)) continue;
    std::vector<std::vector<NodeId>> adj(m);
    for (const Edge& e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    if (!Connected(m, adj, 0)) continue;
    std::sort(edges.begin(), edges.end());
    return edges;
  }
  Fail(ErrorCode::kBudgetExhausted,
       "random " + std::to_string(d) + "-regular graph on " +
           std::to_string(m) + " nodes: restart budget exhausted");
}

void EraseNeighbor(std::vector<NodeId>& list, NodeId v) {
  auto it = std::find(list.begin(), list.end(), v);
  if (it != list.end()) {
    *it = list.back();
    list.pop_back();
  }
}

}  // namespace

Graph RandomRegular(NodeId num_nodes, int d, Rng& rng) {
  return Graph(num_nodes, RandomRegularEdges(num_nodes, d, rng));
}

ClusteredGraph MakeClusteredRegular(NodeId n, int k, int d, int cross_swaps,
                                    Rng& rng) {
  if (k < 1) Fail(ErrorCode::kInvalidArgument, "need k >= 1 clusters");
  if (n < 1 || n % k != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "n = " + std::to_string(n) + " is not divisible by k = " +
             std::to_string(k));
  }
  const NodeId m = n / k;
  CheckRegularParameters(m, d);
  if (cross_swaps < 0) {
    Fail(ErrorCode::kInvalidArgument, "cross_swaps must be non-negative");
  }
  const std::int64_t swap_cap =
      static_cast<std::int64_t>(d) * n / (4 * static_cast<std::int64_t>(k));
  if (cross_swaps > swap_cap) {
    Fail(ErrorCode::kInvalidArgument,
         "cross_swaps = " + std::to_string(cross_swaps) +
             " exceeds d*n/(4k) = " + std::to_string(swap_cap));
  }
  if (k == 1 && cross_swaps > 0) {
    Fail(ErrorCode::kInvalidArgument,
         "cross-cluster swaps need at least two clusters");
  }

  std::vector<Edge> intra;
  for (int c = 0; c < k; ++c) {
    const NodeId base = c * m;
    for (const Edge& e : RandomRegularEdges(m, d, rng)) {
      intra.push_back({e.u + base, e.v + base});
    }
  }

  std::vector<std::vector<NodeId>> intra_adj(n);
  std::unordered_set<std::uint64_t> present;
  for (const Edge& e : intra) {
    intra_adj[e.u].push_back(e.v);
    intra_adj[e.v].push_back(e.u);
    present.insert(EdgeKey(e.u, e.v));
  }

  // Connectivity of a cluster's induced subgraph, read through intra_adj.
  auto cluster_connected = [&](int c) {
    const NodeId base = c * m;
    std::vector<char> seen(m, 0);
    std::queue<NodeId> frontier;
    frontier.push(base);
    seen[0] = 1;
    NodeId reached = 1;
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (NodeId w : intra_adj[v]) {
        if (!seen[w - base]) {
          seen[w - base] = 1;
          ++reached;
          frontier.push(w);
        }
      }
    }
    return reached == m;
  };

  std::vector<Edge> cross;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int swap = 0; swap < cross_swaps; ++swap) {
    bool done = false;
    for (int attempt = 0; attempt < kSwapRetryBudget && !done; ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, intra.size() - 1);
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      Edge e1 = intra[i];
      Edge e2 = intra[j];
      const int c1 = e1.u / m;
      const int c2 = e2.u / m;
      if (c1 == c2) continue;
      if (coin(rng)) std::swap(e1.u, e1.v);
      if (coin(rng)) std::swap(e2.u, e2.v);
      // (a, b), (c, e) -> (a, c), (b, e)
      const NodeId a = e1.u, b = e1.v, c = e2.u, e = e2.v;
      if (present.count(EdgeKey(a, c)) || present.count(EdgeKey(b, e))) {
        continue;
      }
      EraseNeighbor(intra_adj[a], b);
      EraseNeighbor(intra_adj[b], a);
      EraseNeighbor(intra_adj[c], e);
      EraseNeighbor(intra_adj[e], c);
      if (!cluster_connected(c1) || !cluster_connected(c2)) {
        intra_adj[a].push_back(b);
        intra_adj[b].push_back(a);
        intra_adj[c].push_back(e);
        intra_adj[e].push_back(c);
        continue;
      }
      present.erase(EdgeKey(a, b));
      present.erase(EdgeKey(c, e));
      present.insert(EdgeKey(a, c));
      present.insert(EdgeKey(b, e));
      // Remove the higher index first so the lower one stays valid.
      for (std::size_t idx : {std::max(i, j), std::min(i, j)}) {
        intra[idx] = intra.back();
        intra.pop_back();
      }
      cross.push_back(Normalized(a, c));
      cross.push_back(Normalized(b, e));
      done = true;
    }
    if (!done) {
      Fail(ErrorCode::kBudgetExhausted,
           "cross swap " + std::to_string(swap) + " exhausted its " +
               std::to_string(kSwapRetryBudget) + "-attempt budget");
    }
  }

  std::vector<Edge> edges = std::move(intra);
  edges.insert(edges.end(), cross.begin(), cross.end());
  std::sort(edges.begin(), edges.end());

  std::vector<int> assignment(n);
  for (NodeId v = 0; v < n; ++v) assignment[v] = v / m;
  return {Graph(n, std::move(edges)), Partition(k, std::move(assignment))};
}

Graph CompleteGraph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph CycleGraph(NodeId n) {
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "a cycle needs n >= 3");
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back(Normalized(v, (v + 1) % n));
  std::sort(edges.begin(), edges.end());
  return Graph(n, std::move(edges));
}

Graph PathGraph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, std::move(edges));
}

Graph StarGraph(NodeId leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, std::move(edges));
}

Graph CompleteBipartiteGraph(NodeId left, NodeId right) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < left; ++u) {
    for (NodeId v = 0; v < right; ++v) edges.push_back({u, left + v});
  }
  return Graph(left + right, std::move(edges));
}

Graph PrismGraph() {
  return Graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 5}, {3, 4},
                   {3, 5}, {4, 5}});
}

Graph DisjointUnion(const Graph& a, const Graph& b) {
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  const NodeId shift = a.num_nodes();
  for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(a.num_nodes() + b.num_nodes(), std::move(edges));
}

ClusteredGraph DisjointCopies(const Graph& g, int copies) {
  if (copies < 1) Fail(ErrorCode::kInvalidArgument, "need at least one copy");
  Graph out = g;
  for (int c = 1; c < copies; ++c) out = DisjointUnion(out, g);
  std::vector<int> assignment(out.num_nodes());
  for (NodeId v = 0; v < out.num_nodes(); ++v) {
    assignment[v] = v / g.num_nodes();
  }
  return {std::move(out), Partition(copies, std::move(assignment))};
}

}  // namespace loadcluster
