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

#ifndef LOADCLUSTER_GRAPH_H_
#define LOADCLUSTER_GRAPH_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loadcluster {

using NodeId = std::int32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected graph with optional integer self-loop weights.
//
// Edges are stored once, in the order given. Explicit (v, v) edges are kept in
// the edge list so that Validate() can report them, but they are excluded
// from adjacency and degree; self-loops proper are represented only through
// self_loop_weight(), which the almost-regular lift sets to D - degree(v).
// Duplicate edges are kept as well (each copy counts toward degree) for the
// same reason.
class Graph {
 public:
  Graph() = default;

  // Throws Error(kOutOfRange) if an endpoint is outside [0, n).
  Graph(NodeId n, std::vector<Edge> edges);

  NodeId num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  int degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  int self_loop_weight(NodeId v) const { return loop_weight_[v]; }
  // degree(v) + self_loop_weight(v); the row sum of the lifted adjacency.
  int lifted_degree(NodeId v) const { return degree(v) + loop_weight_[v]; }

  int max_degree() const { return max_degree_; }
  int min_degree() const { return min_degree_; }
  bool has_self_loop_weights() const;

  // Number of parallel copies of {u, v} (u != v) among the non-loop edges.
  int EdgeMultiplicity(NodeId u, NodeId v) const;
  bool HasEdge(NodeId u, NodeId v) const { return EdgeMultiplicity(u, v) > 0; }

  // The common lifted degree, if all nodes share one.
  std::optional<int> RegularDegree() const;

 private:
  friend Graph LiftToRegular(const Graph& g, int degree_bound);

  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_ = {0};
  std::vector<NodeId> adjacency_;
  std::vector<int> loop_weight_;
  int max_degree_ = 0;
  int min_degree_ = 0;
};

// A k-way assignment of nodes to clusters. Cluster indices must lie in
// [0, k); empty clusters are representable so that operations requiring
// nonempty clusters can reject them explicitly.
class Partition {
 public:
  Partition() = default;
  Partition(int k, std::vector<int> assignment);

  // Everything in one cluster.
  static Partition Single(NodeId n);

  int num_clusters() const { return k_; }
  NodeId num_nodes() const { return static_cast<NodeId>(assignment_.size()); }
  int cluster_of(NodeId v) const { return assignment_[v]; }
  std::span<const int> assignment() const { return assignment_; }
  std::span<const NodeId> sizes() const { return sizes_; }
  std::vector<NodeId> Members(int cluster) const;

  bool HasEmptyCluster() const;
  // min_i |S_i| >= beta * n.
  bool IsBalanced(double beta) const;
  // min_i |S_i| / n.
  double Balance() const;

 private:
  int k_ = 0;
  std::vector<int> assignment_;
  std::vector<NodeId> sizes_;
};

enum class VolumeConvention {
  // Number of edges with at least one endpoint in S.
  kIncidentEdges,
  // Sum of (lifted) degrees over S.
  kDegreeSum,
};

std::string_view VolumeConventionName(VolumeConvention conv);
VolumeConvention ParseVolumeConvention(std::string_view name);

struct ValidationReport {
  bool symmetric = true;
  std::vector<Edge> duplicate_edges;
  std::vector<Edge> self_loop_edges;
  // Either no self-loop weights at all, or they lift every node to the same
  // total degree.
  bool loop_weights_consistent = true;
  bool connected = true;
  int components = 0;
  // Plain regularity: equal degree and no loop weights.
  bool regular = false;
  std::optional<int> degree;
  // Regular once self-loop weights are counted.
  bool lifted_regular = false;
  std::optional<int> lifted_degree;
  int max_degree = 0;
  int min_degree = 0;
  // max_degree / min_degree; infinity when an isolated node exists.
  double degree_ratio = 0.0;

  bool simple() const {
    return duplicate_edges.empty() && self_loop_edges.empty();
  }
};

ValidationReport Validate(const Graph& g);

// Connected-component index per node, numbered in order of first appearance.
std::vector<int> ConnectedComponents(const Graph& g, int* count = nullptr);

// Node-set arguments may contain repeats; they are treated as sets. Node ids
// outside [0, n) raise Error(kOutOfRange).
std::int64_t Volume(const Graph& g, std::span<const NodeId> set,
                    VolumeConvention conv = VolumeConvention::kIncidentEdges);

// |E(S, V \ S)|.
std::int64_t CutSize(const Graph& g, std::span<const NodeId> set);

// |E(S, V \ S)| / vol(S). Empty S or zero volume raise
// Error(kDegenerateInput).
double Conductance(const Graph& g, std::span<const NodeId> set,
                   VolumeConvention conv = VolumeConvention::kIncidentEdges);

// Almost-regular lift: every node receives D - degree(v) units of self-loop
// weight. Throws Error(kInvalidArgument) if D < max_degree().
Graph LiftToRegular(const Graph& g, int degree_bound);

// max_i phi(S_i) over the clusters of `p`, an upper bound on rho(k).
double PlantedRhoUpper(const Graph& g, const Partition& p,
                       VolumeConvention conv = VolumeConvention::kIncidentEdges);

struct RhoResult {
  double value = 0.0;
  Partition partition;
  std::uint64_t partitions_examined = 0;
};

inline constexpr NodeId kBruteForceMaxNodes = 14;

// Exact k-way expansion by enumerating all set partitions into exactly k
// nonempty blocks (restricted growth strings). Partitions containing a block
// of zero volume have undefined conductance and are skipped. Refuses
// n > kBruteForceMaxNodes with Error(kTooLarge).
RhoResult BruteForceRho(const Graph& g, int k,
                        VolumeConvention conv = VolumeConvention::kIncidentEdges);

}  // namespace loadcluster

#endif  // LOADCLUSTER_GRAPH_H_
