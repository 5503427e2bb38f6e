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

#include "loadcluster/protocol.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "loadcluster/error.h"
#include "loadcluster/spectral.h"

namespace loadcluster {

NodeState NodeState::FromEntries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.prefix < b.prefix; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].suffix > 0.0)) {
      Fail(ErrorCode::kInvalidArgument, "state suffixes must be positive");
    }
    if (i > 0 && entries[i].prefix == entries[i - 1].prefix) {
      Fail(ErrorCode::kInvalidArgument,
           "duplicate prefix " + std::to_string(entries[i].prefix));
    }
  }
  return NodeState(std::move(entries));
}

double NodeState::Get(SeedId prefix) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), prefix,
      [](const Entry& e, SeedId p) { return e.prefix < p; });
  return it != entries_.end() && it->prefix == prefix ? it->suffix : 0.0;
}

NodeState MergeStates(const NodeState& a, const NodeState& b) {
  const auto& x = a.entries_;
  const auto& y = b.entries_;
  std::vector<NodeState::Entry> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].prefix < y[j].prefix)) {
      out.push_back({x[i].prefix, x[i].suffix / 2.0});
      ++i;
    } else if (i == x.size() || y[j].prefix < x[i].prefix) {
      out.push_back({y[j].prefix, y[j].suffix / 2.0});
      ++j;
    } else {
      out.push_back({x[i].prefix, (x[i].suffix + y[j].suffix) / 2.0});
      ++i;
      ++j;
    }
  }
  return NodeState(std::move(out));
}

void ValidateConfig(const ProtocolConfig& cfg) {
  if (!(cfg.beta > 0.0 && cfg.beta <= 0.5)) {
    Fail(ErrorCode::kInvalidArgument,
         "beta = " + std::to_string(cfg.beta) + " outside (0, 1/2]");
  }
  if (!(cfg.c_t > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "c_t must be positive");
  }
  if (cfg.rounds_override.has_value() && *cfg.rounds_override < 0) {
    Fail(ErrorCode::kInvalidArgument, "round override must be >= 0");
  }
}

std::uint64_t IdSpace(NodeId n) {
  const auto m = static_cast<std::uint64_t>(n);
  return m * m * m;
}

IdAssignment AssignIds(NodeId n, Rng& rng) {
  if (n < 1) Fail(ErrorCode::kInvalidArgument, "need n >= 1");
  std::uniform_int_distribution<std::uint64_t> draw(1, IdSpace(n));
  IdAssignment out;
  out.ids.reserve(n);
  std::unordered_set<SeedId> taken;
  for (NodeId v = 0; v < n; ++v) {
    SeedId id = draw(rng);
    while (taken.count(id)) {
      ++out.collisions;
      id = draw(rng);
    }
    taken.insert(id);
    out.ids.push_back(id);
  }
  return out;
}

int SeedingTrials(double beta) {
  if (!(beta > 0.0 && beta <= 0.5)) {
    Fail(ErrorCode::kInvalidArgument, "beta outside (0, 1/2]");
  }
  return static_cast<int>(std::ceil(3.0 / beta * std::log(1.0 / beta)));
}

SeedingResult Seeding(NodeId n, std::span<const SeedId> ids, double beta,
                      Rng& rng) {
  if (ids.size() != static_cast<std::size_t>(n)) {
    Fail(ErrorCode::kMismatch, "one id per node required");
  }
  SeedingResult out;
  out.trials = SeedingTrials(beta);
  out.states.resize(n);
  std::bernoulli_distribution active(1.0 / n);
  for (NodeId v = 0; v < n; ++v) {
    int hits = 0;
    for (int t = 0; t < out.trials; ++t) hits += active(rng) ? 1 : 0;
    out.activations += hits;
    if (hits > 0) {
      out.seeds.push_back({v, ids[v]});
      out.states[v] = NodeState::Seed(ids[v]);
    }
  }
  std::sort(out.seeds.begin(), out.seeds.end(),
            [](const ActiveSeed& a, const ActiveSeed& b) { return a.id < b.id; });
  return out;
}

std::int64_t AveragingRound(std::vector<NodeState>& states, const Matching& m) {
  if (states.size() != static_cast<std::size_t>(m.num_nodes())) {
    Fail(ErrorCode::kMismatch, "state count does not match the matching");
  }
  std::int64_t words = 0;
  for (const Edge& e : m.pairs()) {
    words += static_cast<std::int64_t>(states[e.u].size() + states[e.v].size());
    NodeState merged = MergeStates(states[e.u], states[e.v]);
    states[e.v] = merged;
    states[e.u] = std::move(merged);
  }
  return words;
}

AveragingResult RunAveraging(const Graph& g, std::vector<NodeState>& states,
                             int rounds, const ProtocolVariant& variant,
                             Rng& rng) {
  if (rounds < 0) Fail(ErrorCode::kInvalidArgument, "rounds must be >= 0");
  AveragingResult out;
  out.matchings.reserve(rounds);
  for (int t = 0; t < rounds; ++t) {
    Matching m = SampleMatching(g, variant, rng);
    out.words += AveragingRound(states, m);
    out.matchings.push_back(std::move(m));
  }
  return out;
}

std::int64_t ReplayAveraging(std::vector<NodeState>& states,
                             std::span<const Matching> matchings) {
  std::int64_t words = 0;
  for (const Matching& m : matchings) words += AveragingRound(states, m);
  return words;
}

double QueryThreshold(double beta, NodeId n) {
  return 1.0 / (std::sqrt(2.0 * beta) * n);
}

QueryResult Query(const NodeState& state, double beta, NodeId n) {
  const double threshold = QueryThreshold(beta, n);
  // Entries are sorted by prefix, so the first qualifying one is the min.
  for (const auto& e : state.entries()) {
    if (e.suffix >= threshold) return {e.prefix, true};
  }
  if (state.empty()) return {kUnlabeled, false};
  return {state.entries().front().prefix, false};
}

namespace {

RunTrace StartRun(const Graph& g, const ProtocolConfig& cfg) {
  ValidateConfig(cfg);
  CheckVariant(g, cfg.variant);
  RunTrace trace;
  trace.config = cfg;
  Rng id_rng = MakeRng(cfg.seed, static_cast<std::uint64_t>(Stream::kIds));
  IdAssignment ids = AssignIds(g.num_nodes(), id_rng);
  trace.ids = std::move(ids.ids);
  trace.id_collisions = ids.collisions;
  Rng seed_rng =
      MakeRng(cfg.seed, static_cast<std::uint64_t>(Stream::kSeeding));
  SeedingResult seeding = Seeding(g.num_nodes(), trace.ids, cfg.beta, seed_rng);
  trace.seeding_trials = seeding.trials;
  trace.seeds = std::move(seeding.seeds);
  trace.final_states = std::move(seeding.states);
  return trace;
}

void FinishRun(const Graph& g, RunTrace& trace) {
  const NodeId n = g.num_nodes();
  trace.labels.resize(n);
  trace.labeled.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    const QueryResult q = Query(trace.final_states[v], trace.config.beta, n);
    trace.labels[v] = q.label;
    trace.labeled[v] = q.labeled;
    if (!q.labeled) ++trace.unlabeled_count;
    if (trace.final_states[v].empty()) ++trace.empty_count;
  }
}

}  // namespace

RunTrace RunProtocol(const Graph& g, const ProtocolConfig& cfg, int rounds) {
  RunTrace trace = StartRun(g, cfg);
  trace.rounds = rounds;
  Rng match_rng =
      MakeRng(cfg.seed, static_cast<std::uint64_t>(Stream::kMatchings));
  AveragingResult avg =
      RunAveraging(g, trace.final_states, rounds, cfg.variant, match_rng);
  trace.matchings = std::move(avg.matchings);
  trace.words = avg.words;
  FinishRun(g, trace);
  return trace;
}

RunTrace ReplayProtocol(const Graph& g, const ProtocolConfig& cfg,
                        std::vector<Matching> matchings) {
  RunTrace trace = StartRun(g, cfg);
  for (std::size_t t = 0; t < matchings.size(); ++t) {
    if (!matchings[t].IsValidFor(g)) {
      Fail(ErrorCode::kMismatch, "recorded matching for round " +
                                     std::to_string(t + 1) +
                                     " is not a matching of this graph");
    }
  }
  trace.rounds = static_cast<int>(matchings.size());
  trace.words = ReplayAveraging(trace.final_states, matchings);
  trace.matchings = std::move(matchings);
  FinishRun(g, trace);
  return trace;
}

int ResolveRounds(const Graph& g, const Partition& planted,
                  const ProtocolConfig& cfg) {
  ValidateConfig(cfg);
  if (cfg.rounds_override.has_value()) return *cfg.rounds_override;
  const int k = planted.num_clusters();
  if (k >= g.num_nodes()) {
    Fail(ErrorCode::kOutOfRange, "round count needs k < n");
  }
  const Graph walk_graph = cfg.variant.emulated()
                               ? LiftToRegular(g, cfg.variant.lift_degree)
                               : g;
  const Spectrum spec = GraphSpectrum(walk_graph);
  return RoundsForGap(cfg.c_t, g.num_nodes(), spec.lambda(k + 1));
}

RunTrace RunFull(const Graph& g, const Partition& planted,
                 const ProtocolConfig& cfg) {
  if (planted.num_nodes() != g.num_nodes()) {
    Fail(ErrorCode::kMismatch, "planted partition does not cover the graph");
  }
  return RunProtocol(g, cfg, ResolveRounds(g, planted, cfg));
}

}  // namespace loadcluster
