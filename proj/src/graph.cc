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

#include "loadcluster/graph.h"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "loadcluster/error.h"

namespace loadcluster {

Graph::Graph(NodeId n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 0) Fail(ErrorCode::kInvalidArgument, "negative node count");
  std::vector<int> degree(n, 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      Fail(ErrorCode::kOutOfRange,
           "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
               ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) continue;
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    if (e.u == e.v) continue;
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (NodeId v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v],
              adjacency_.begin() + offsets_[v + 1]);
  }
  loop_weight_.assign(n, 0);
  if (n > 0) {
    auto [lo, hi] = std::minmax_element(degree.begin(), degree.end());
    min_degree_ = *lo;
    max_degree_ = *hi;
  }
}

bool Graph::has_self_loop_weights() const {
  return std::any_of(loop_weight_.begin(), loop_weight_.end(),
                     [](int w) { return w > 0; });
}

int Graph::EdgeMultiplicity(NodeId u, NodeId v) const {
  if (u == v) return 0;
  auto nbrs = neighbors(u);
  auto [first, last] = std::equal_range(nbrs.begin(), nbrs.end(), v);
  return static_cast<int>(last - first);
}

std::optional<int> Graph::RegularDegree() const {
  if (n_ == 0) return std::nullopt;
  const int d = lifted_degree(0);
  for (NodeId v = 1; v < n_; ++v) {
    if (lifted_degree(v) != d) return std::nullopt;
  }
  return d;
}

Partition::Partition(int k, std::vector<int> assignment)
    : k_(k), assignment_(std::move(assignment)) {
  if (k < 1) Fail(ErrorCode::kInvalidArgument, "partition needs k >= 1");
  sizes_.assign(k, 0);
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    const int c = assignment_[v];
    if (c < 0 || c >= k) {
      Fail(ErrorCode::kOutOfRange, "node " + std::to_string(v) +
                                       " assigned to cluster " +
                                       std::to_string(c) + " outside [0, " +
                                       std::to_string(k) + ")");
    }
    ++sizes_[c];
  }
}

Partition Partition::Single(NodeId n) {
  return Partition(1, std::vector<int>(n, 0));
}

std::vector<NodeId> Partition::Members(int cluster) const {
  std::vector<NodeId> out;
  out.reserve(sizes_.at(cluster));
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (assignment_[v] == cluster) out.push_back(v);
  }
  return out;
}

bool Partition::HasEmptyCluster() const {
  return std::any_of(sizes_.begin(), sizes_.end(),
                     [](NodeId s) { return s == 0; });
}

double Partition::Balance() const {
  if (sizes_.empty() || assignment_.empty()) return 0.0;
  return static_cast<double>(*std::min_element(sizes_.begin(), sizes_.end())) /
         static_cast<double>(assignment_.size());
}

bool Partition::IsBalanced(double beta) const {
  if (sizes_.empty()) return false;
  const NodeId smallest = *std::min_element(sizes_.begin(), sizes_.end());
  return static_cast<double>(smallest) >=
         beta * static_cast<double>(assignment_.size());
}

std::string_view VolumeConventionName(VolumeConvention conv) {
  switch (conv) {
    case VolumeConvention::kIncidentEdges:
      return "incident-edges";
    case VolumeConvention::kDegreeSum:
      return "degree-sum";
  }
  return "unknown";
}

VolumeConvention ParseVolumeConvention(std::string_view name) {
  if (name == "incident-edges") return VolumeConvention::kIncidentEdges;
  if (name == "degree-sum") return VolumeConvention::kDegreeSum;
  Fail(ErrorCode::kParse,
       "unknown volume convention '" + std::string(name) +
           "' (expected incident-edges or degree-sum)");
}

std::vector<int> ConnectedComponents(const Graph& g, int* count) {
  const NodeId n = g.num_nodes();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (NodeId w : g.neighbors(v)) {
        if (comp[w] == -1) {
          comp[w] = next;
          frontier.push(w);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return comp;
}

ValidationReport Validate(const Graph& g) {
  ValidationReport report;
  const NodeId n = g.num_nodes();

  std::map<Edge, int> seen;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      report.self_loop_edges.push_back(e);
      continue;
    }
    const Edge key{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (seen[key]++ == 1) report.duplicate_edges.push_back(key);
  }

  for (NodeId u = 0; u < n && report.symmetric; ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (g.EdgeMultiplicity(v, u) != g.EdgeMultiplicity(u, v)) {
        report.symmetric = false;
        break;
      }
    }
  }

  ConnectedComponents(g, &report.components);
  report.connected = report.components <= 1;

  report.max_degree = g.max_degree();
  report.min_degree = g.min_degree();
  report.degree_ratio =
      report.min_degree > 0
          ? static_cast<double>(report.max_degree) / report.min_degree
          : std::numeric_limits<double>::infinity();

  const bool has_loops = g.has_self_loop_weights();
  const std::optional<int> lifted = g.RegularDegree();
  report.loop_weights_consistent = !has_loops || lifted.has_value();
  report.lifted_regular = lifted.has_value();
  report.lifted_degree = lifted;
  report.regular = lifted.has_value() && !has_loops;
  if (report.regular) report.degree = lifted;
  return report;
}

namespace {

std::vector<char> Membership(const Graph& g, std::span<const NodeId> set,
                             std::int64_t* distinct) {
  std::vector<char> in(g.num_nodes(), 0);
  std::int64_t count = 0;
  for (NodeId v : set) {
    if (v < 0 || v >= g.num_nodes()) {
      Fail(ErrorCode::kOutOfRange, "node " + std::to_string(v) +
                                       " outside [0, " +
                                       std::to_string(g.num_nodes()) + ")");
    }
    if (!in[v]) {
      in[v] = 1;
      ++count;
    }
  }
  if (distinct != nullptr) *distinct = count;
  return in;
}

struct SetEdgeCounts {
  std::int64_t internal = 0;
  std::int64_t cut = 0;
  std::int64_t degree_sum = 0;
};

SetEdgeCounts CountSetEdges(const Graph& g, const std::vector<char>& in) {
  SetEdgeCounts counts;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    const bool a = in[e.u];
    const bool b = in[e.v];
    if (a && b) {
      ++counts.internal;
    } else if (a != b) {
      ++counts.cut;
    }
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (in[v]) counts.degree_sum += g.lifted_degree(v);
  }
  return counts;
}

std::int64_t VolumeOf(const SetEdgeCounts& c, VolumeConvention conv) {
  return conv == VolumeConvention::kIncidentEdges ? c.internal + c.cut
                                                 : c.degree_sum;
}

}  // namespace

std::int64_t Volume(const Graph& g, std::span<const NodeId> set,
                    VolumeConvention conv) {
  const auto in = Membership(g, set, nullptr);
  return VolumeOf(CountSetEdges(g, in), conv);
}

std::int64_t CutSize(const Graph& g, std::span<const NodeId> set) {
  const auto in = Membership(g, set, nullptr);
  return CountSetEdges(g, in).cut;
}

double Conductance(const Graph& g, std::span<const NodeId> set,
                   VolumeConvention conv) {
  std::int64_t distinct = 0;
  const auto in = Membership(g, set, &distinct);
  if (distinct == 0) {
    Fail(ErrorCode::kDegenerateInput, "conductance of the empty set");
  }
  const SetEdgeCounts counts = CountSetEdges(g, in);
  const std::int64_t vol = VolumeOf(counts, conv);
  if (vol == 0) {
    Fail(ErrorCode::kDegenerateInput,
         "conductance undefined: set has zero volume");
  }
  return static_cast<double>(counts.cut) / static_cast<double>(vol);
}

Graph LiftToRegular(const Graph& g, int degree_bound) {
  if (degree_bound < g.max_degree()) {
    Fail(ErrorCode::kInvalidArgument,
         "lift degree " + std::to_string(degree_bound) +
             " is below the maximum degree " + std::to_string(g.max_degree()));
  }
  Graph lifted = g;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    lifted.loop_weight_[v] = degree_bound - g.degree(v);
  }
  return lifted;
}

double PlantedRhoUpper(const Graph& g, const Partition& p,
                       VolumeConvention conv) {
  if (p.num_nodes() != g.num_nodes()) {
    Fail(ErrorCode::kMismatch, "partition covers " +
                                   std::to_string(p.num_nodes()) +
                                   " nodes but the graph has " +
                                   std::to_string(g.num_nodes()));
  }
  if (p.HasEmptyCluster()) {
    Fail(ErrorCode::kDegenerateInput, "partition has an empty cluster");
  }
  double worst = 0.0;
  for (int c = 0; c < p.num_clusters(); ++c) {
    const auto members = p.Members(c);
    worst = std::max(worst, Conductance(g, members, conv));
  }
  return worst;
}

}  // namespace loadcluster
