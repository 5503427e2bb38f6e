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

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "loadcluster/error.h"
#include "loadcluster/graph.h"

namespace loadcluster {
namespace {

class PartitionEnumerator {
 public:
  PartitionEnumerator(const Graph& g, int k, VolumeConvention conv)
      : g_(g), k_(k), conv_(conv), labels_(g.num_nodes(), 0),
        internal_(k), cut_(k), degree_sum_(k) {}

  RhoResult Run() {
    labels_[0] = 0;
    Recurse(1, 1);
    if (!found_) {
      Fail(ErrorCode::kDegenerateInput,
           "every " + std::to_string(k_) +
               "-way partition has a zero-volume block");
    }
    return RhoResult{best_value_, Partition(k_, best_labels_), examined_};
  }

 private:
  // Restricted growth string: labels_[v] <= max(labels_[0..v-1]) + 1.
  void Recurse(NodeId v, int used) {
    const NodeId n = g_.num_nodes();
    if (v == n) {
      if (used == k_) Evaluate();
      return;
    }
    // Not enough nodes left to open the remaining blocks.
    if (n - v < k_ - used) return;
    const int limit = std::min(used, k_ - 1);
    for (int c = 0; c <= limit; ++c) {
      labels_[v] = c;
      Recurse(v + 1, std::max(used, c + 1));
    }
  }

  void Evaluate() {
    ++examined_;
    std::fill(internal_.begin(), internal_.end(), 0);
    std::fill(cut_.begin(), cut_.end(), 0);
    std::fill(degree_sum_.begin(), degree_sum_.end(), 0);
    for (const Edge& e : g_.edges()) {
      if (e.u == e.v) continue;
      const int a = labels_[e.u];
      const int b = labels_[e.v];
      if (a == b) {
        ++internal_[a];
      } else {
        ++cut_[a];
        ++cut_[b];
      }
    }
    for (NodeId v = 0; v < g_.num_nodes(); ++v) {
      degree_sum_[labels_[v]] += g_.lifted_degree(v);
    }
    double worst = 0.0;
    for (int c = 0; c < k_; ++c) {
      const std::int64_t vol = conv_ == VolumeConvention::kIncidentEdges
                                   ? internal_[c] + cut_[c]
                                   : degree_sum_[c];
      if (vol == 0) return;
      worst = std::max(worst, static_cast<double>(cut_[c]) /
                                  static_cast<double>(vol));
    }
    if (!found_ || worst < best_value_) {
      found_ = true;
      best_value_ = worst;
      best_labels_ = labels_;
    }
  }

  const Graph& g_;
  const int k_;
  const VolumeConvention conv_;
  std::vector<int> labels_;
  std::vector<std::int64_t> internal_;
  std::vector<std::int64_t> cut_;
  std::vector<std::int64_t> degree_sum_;
  bool found_ = false;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<int> best_labels_;
  std::uint64_t examined_ = 0;
};

}  // namespace

RhoResult BruteForceRho(const Graph& g, int k, VolumeConvention conv) {
  const NodeId n = g.num_nodes();
  if (n > kBruteForceMaxNodes) {
    Fail(ErrorCode::kTooLarge,
         "exhaustive rho(k) refused for n = " + std::to_string(n) +
             " (limit " + std::to_string(kBruteForceMaxNodes) + ")");
  }
  if (k < 1 || k > n) {
    Fail(ErrorCode::kInvalidArgument,
         "k = " + std::to_string(k) + " outside [1, n]");
  }
  return PartitionEnumerator(g, k, conv).Run();
}

}  // namespace loadcluster
