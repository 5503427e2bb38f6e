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

#ifndef LOADCLUSTER_PROTOCOL_H_
#define LOADCLUSTER_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "loadcluster/graph.h"
#include "loadcluster/matching.h"
#include "loadcluster/rng.h"

namespace loadcluster {

using SeedId = std::uint64_t;

// Label given to nodes whose state is empty. Real identifiers are >= 1.
inline constexpr SeedId kUnlabeled = 0;

// Sparse per-node state: (prefix, suffix) entries sorted by prefix. Suffixes
// are strictly positive.
class NodeState {
 public:
  struct Entry {
    SeedId prefix = 0;
    double suffix = 0.0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  NodeState() = default;

  // Unit mass on one prefix.
  static NodeState Seed(SeedId prefix) { return NodeState({{prefix, 1.0}}); }
  // Entries need not be sorted; duplicate prefixes or non-positive suffixes
  // throw Error(kInvalidArgument).
  static NodeState FromEntries(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // 0 when the prefix is absent.
  double Get(SeedId prefix) const;

  friend bool operator==(const NodeState&, const NodeState&) = default;

 private:
  explicit NodeState(std::vector<Entry> sorted) : entries_(std::move(sorted)) {}
  friend NodeState MergeStates(const NodeState& a, const NodeState& b);

  std::vector<Entry> entries_;
};

// Union-merge of two matched nodes' states: a shared prefix gets
// (x + y) / 2, a one-sided prefix gets x / 2. Both nodes adopt the result.
NodeState MergeStates(const NodeState& a, const NodeState& b);

struct ProtocolConfig {
  double beta = 0.5;
  double c_t = 5.0;
  std::optional<int> rounds_override;
  std::uint64_t seed = 1;
  ProtocolVariant variant;
};

// Throws Error(kInvalidArgument) unless beta is in (0, 1/2] and c_t > 0.
void ValidateConfig(const ProtocolConfig& cfg);

// n^3, the identifier range.
std::uint64_t IdSpace(NodeId n);

struct IdAssignment {
  std::vector<SeedId> ids;
  // Draws that hit an already-taken value and were redrawn.
  int collisions = 0;
};

// Uniform draws from [1, n^3], redrawn on collision until all distinct.
IdAssignment AssignIds(NodeId n, Rng& rng);

// ceil((3 / beta) ln(1 / beta)).
int SeedingTrials(double beta);

struct ActiveSeed {
  NodeId node = 0;
  SeedId id = 0;

  friend bool operator==(const ActiveSeed&, const ActiveSeed&) = default;
};

struct SeedingResult {
  int trials = 0;
  // Sorted by id.
  std::vector<ActiveSeed> seeds;
  std::vector<NodeState> states;
  // Successful Bernoulli trials summed over nodes, before collapsing repeats.
  std::int64_t activations = 0;
};

// Every node runs `SeedingTrials(beta)` independent Bernoulli(1/n) trials;
// nodes active at least once start with unit mass on their own id.
SeedingResult Seeding(NodeId n, std::span<const SeedId> ids, double beta,
                      Rng& rng);

// Merges matched pairs in place. Returns the words exchanged: every entry
// held by either endpoint counts once.
std::int64_t AveragingRound(std::vector<NodeState>& states, const Matching& m);

struct AveragingResult {
  std::vector<Matching> matchings;
  std::int64_t words = 0;
};

// T rounds of sampling a matching and merging. States are updated in place.
AveragingResult RunAveraging(const Graph& g, std::vector<NodeState>& states,
                             int rounds, const ProtocolVariant& variant,
                             Rng& rng);

// Same, replaying recorded matchings instead of sampling.
std::int64_t ReplayAveraging(std::vector<NodeState>& states,
                             std::span<const Matching> matchings);

struct QueryResult {
  SeedId label = kUnlabeled;
  bool labeled = false;
};

// 1 / (sqrt(2 beta) n).
double QueryThreshold(double beta, NodeId n);

// Smallest prefix whose suffix reaches the threshold. Otherwise falls back
// to the smallest prefix present (labeled = false), or kUnlabeled for an
// empty state.
QueryResult Query(const NodeState& state, double beta, NodeId n);

struct RunTrace {
  ProtocolConfig config;
  int rounds = 0;
  int seeding_trials = 0;
  std::vector<SeedId> ids;
  int id_collisions = 0;
  std::vector<ActiveSeed> seeds;
  std::vector<Matching> matchings;
  std::int64_t words = 0;
  std::vector<NodeState> final_states;
  std::vector<SeedId> labels;
  std::vector<char> labeled;
  // Nodes that fell back (labeled == false), including empty states.
  NodeId unlabeled_count = 0;
  // Nodes with an empty final state.
  NodeId empty_count = 0;
};

// Independent generator streams per protocol phase, so a run can be
// replayed with recorded matchings and identical ids and seeds.
enum class Stream : std::uint64_t { kIds = 0, kSeeding = 1, kMatchings = 2 };

// assign ids -> seeding -> `rounds` averaging rounds -> query. Randomness is
// drawn from streams derived from cfg.seed.
RunTrace RunProtocol(const Graph& g, const ProtocolConfig& cfg, int rounds);

// Like RunProtocol but the averaging phase replays `matchings`.
RunTrace ReplayProtocol(const Graph& g, const ProtocolConfig& cfg,
                        std::vector<Matching> matchings);

// End-to-end driver: rounds come from cfg.rounds_override, or else from the
// spectral gap of `g` relative to `planted` (ceil(c_t ln n / (1 -
// lambda_{k+1}))).
RunTrace RunFull(const Graph& g, const Partition& planted,
                 const ProtocolConfig& cfg);

// Rounds RunFull would use.
int ResolveRounds(const Graph& g, const Partition& planted,
                  const ProtocolConfig& cfg);

}  // namespace loadcluster

#endif  // LOADCLUSTER_PROTOCOL_H_
