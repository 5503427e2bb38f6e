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

#include "oracles.h"

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace loadcluster::oracle {

std::vector<double> EigenvaluesDescending(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e(i, j) = m(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + n);
  std::sort(out.rbegin(), out.rend());
  return out;
}

Matrix WalkMatrix(const Graph& g, int degree) {
  const NodeId n = g.num_nodes();
  Matrix p(n, n);
  std::vector<int> deg(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    p(e.u, e.v) += 1.0 / degree;
    p(e.v, e.u) += 1.0 / degree;
    ++deg[e.u];
    ++deg[e.v];
  }
  for (NodeId v = 0; v < n; ++v) {
    p(v, v) += static_cast<double>(degree - deg[v]) / degree;
  }
  return p;
}

Matrix ExpectedMatching(const Graph& g, int slots_per_node_or_zero) {
  const NodeId n = g.num_nodes();
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  // target[v]: -2 inactive, -1 active without a proposal, else the proposee.
  std::vector<NodeId> target(n, -2);
  Matrix expected(n, n);
  std::function<void(NodeId, double)> recurse = [&](NodeId v, double prob) {
    if (v == n) {
      Matrix m = Matrix::Identity(n);
      for (NodeId w = 0; w < n; ++w) {
        if (target[w] != -2) continue;
        int proposals = 0;
        NodeId proposer = -1;
        for (NodeId u = 0; u < n; ++u) {
          if (target[u] == w) {
            ++proposals;
            proposer = u;
          }
        }
        if (proposals == 1) {
          m(w, w) = m(proposer, proposer) = 0.5;
          m(w, proposer) = m(proposer, w) = 0.5;
        }
      }
      for (NodeId a = 0; a < n; ++a) {
        for (NodeId b = 0; b < n; ++b) expected(a, b) += prob * m(a, b);
      }
      return;
    }
    const int deg = static_cast<int>(adj[v].size());
    const int slots = slots_per_node_or_zero > 0 ? slots_per_node_or_zero : deg;
    target[v] = -2;
    recurse(v + 1, prob * 0.5);
    if (slots == 0) {
      target[v] = -1;
      recurse(v + 1, prob * 0.5);
    }
    for (int s = 0; s < slots; ++s) {
      target[v] = s < deg ? adj[v][s] : -1;
      recurse(v + 1, prob * 0.5 / slots);
    }
    target[v] = -2;
  };
  recurse(0, 1.0);
  return expected;
}

double RhoByLabelings(const Graph& g, int k, bool degree_sum) {
  const NodeId n = g.num_nodes();
  std::vector<int> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::int64_t total = 1;
  for (NodeId v = 0; v < n; ++v) total *= k;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (NodeId v = 0; v < n; ++v) {
      label[v] = static_cast<int>(c % k);
      c /= k;
    }
    std::vector<std::int64_t> size(k, 0), cut(k, 0), vol(k, 0);
    for (NodeId v = 0; v < n; ++v) {
      ++size[label[v]];
      if (degree_sum) vol[label[v]] += g.self_loop_weight(v);
    }
    for (const Edge& e : g.edges()) {
      if (e.u == e.v) continue;
      const int a = label[e.u];
      const int b = label[e.v];
      if (a != b) {
        ++cut[a];
        ++cut[b];
      }
      if (degree_sum) {
        ++vol[a];
        ++vol[b];
      } else {
        ++vol[a];
        if (b != a) ++vol[b];
      }
    }
    double worst = 0.0;
    bool valid = true;
    for (int i = 0; i < k; ++i) {
      if (size[i] == 0 || vol[i] == 0) {
        valid = false;
        break;
      }
      worst = std::max(worst, static_cast<double>(cut[i]) / vol[i]);
    }
    if (valid) best = std::min(best, worst);
  }
  return best;
}

int ComponentsByUnionFind(const Graph& g) {
  std::vector<NodeId> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<NodeId(NodeId)> find = [&](NodeId x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  int components = g.num_nodes();
  for (const Edge& e : g.edges()) {
    const NodeId a = find(e.u);
    const NodeId b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

std::int64_t MisclassificationByPermutation(std::span<const SeedId> labels,
                                            std::span<const char> labeled,
                                            const Partition& planted) {
  std::map<SeedId, int> index;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labeled[v]) index.emplace(labels[v], 0);
  }
  int next = 0;
  for (auto& [label, i] : index) i = next++;
  const int l = next;
  const int k = planted.num_clusters();
  std::vector<int> slots;
  for (int c = 0; c < k; ++c) slots.push_back(c);
  for (int i = 0; i < l; ++i) slots.push_back(-1);
  std::sort(slots.begin(), slots.end());
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t wrong = 0;
    for (std::size_t v = 0; v < labels.size(); ++v) {
      if (!labeled[v] || slots[index.at(labels[v])] != planted.cluster_of(v)) {
        ++wrong;
      }
    }
    best = std::min(best, wrong);
  } while (std::next_permutation(slots.begin(), slots.end()));
  return best;
}

}  // namespace loadcluster::oracle
