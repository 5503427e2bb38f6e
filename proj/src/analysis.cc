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

#include "loadcluster/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "loadcluster/error.h"
#include "loadcluster/parallel.h"
#include "loadcluster/rng.h"

namespace loadcluster {
namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe Summarize(std::span<const double> xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / xs.size();
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / (xs.size() - 1) / xs.size());
  return out;
}

double DistanceTo(std::span<const double> a, std::span<const double> b) {
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(ss);
}

}  // namespace

DenseEvolution EvolveDense(const Graph& g, std::span<const ActiveSeed> seeds,
                           std::span<const Matching> matchings,
                           bool keep_rounds) {
  const NodeId n = g.num_nodes();
  for (std::size_t t = 0; t < matchings.size(); ++t) {
    if (matchings[t].num_nodes() != n || !matchings[t].IsValidFor(g)) {
      Fail(ErrorCode::kMismatch, "matching for round " + std::to_string(t + 1) +
                                     " does not fit the graph");
    }
  }
  DenseEvolution out;
  out.seeds.assign(seeds.begin(), seeds.end());
  Matrix x(seeds.size(), n);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].node < 0 || seeds[i].node >= n) {
      Fail(ErrorCode::kMismatch, "seed node outside the graph");
    }
    x(i, seeds[i].node) = 1.0;
  }
  if (keep_rounds) out.per_round.reserve(matchings.size() + 1);
  out.per_round.push_back(x);
  for (const Matching& m : matchings) {
    ApplyMatching(m, x);
    if (keep_rounds) out.per_round.push_back(x);
  }
  if (!keep_rounds) out.per_round.back() = std::move(x);
  return out;
}

CheckResult MassConservation(const DenseEvolution& dense, double tol) {
  CheckResult r;
  r.name = "mass-conservation";
  r.limit = tol;
  for (const Matrix& x : dense.per_round) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      double sum = 0.0;
      for (double v : x.row(i)) sum += v;
      r.observed = std::max(r.observed, std::abs(sum - 1.0));
    }
  }
  r.passed = r.observed <= tol;
  r.reported.emplace_back("rounds_checked",
                          static_cast<double>(dense.per_round.size()));
  return r;
}

CheckResult EquivalenceCheck(const RunTrace& trace, const DenseEvolution& dense,
                             double tol) {
  CheckResult r;
  r.name = "sparse-dense";
  r.limit = tol;
  r.passed = true;
  const Matrix& x = dense.final_loads();
  const std::size_t s = dense.seeds.size();
  const NodeId n = static_cast<NodeId>(trace.final_states.size());
  if (s > 0 && static_cast<NodeId>(x.cols()) != n) {
    Fail(ErrorCode::kMismatch, "dense replay and run cover different graphs");
  }
  std::map<SeedId, std::size_t> index;
  for (std::size_t i = 0; i < s; ++i) index[dense.seeds[i].id] = i;
  for (NodeId v = 0; v < n && r.passed; ++v) {
    for (const auto& e : trace.final_states[v].entries()) {
      if (!index.count(e.prefix)) {
        r.passed = false;
        r.observed = std::numeric_limits<double>::infinity();
        r.detail = "node " + std::to_string(v) + " holds unknown prefix " +
                   std::to_string(e.prefix);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < s && r.passed; ++i) {
    const SeedId id = dense.seeds[i].id;
    for (NodeId v = 0; v < n; ++v) {
      const double sparse = trace.final_states[v].Get(id);
      const double diff = std::abs(sparse - x(i, v));
      r.observed = std::max(r.observed, diff);
      if (diff > tol) {
        std::ostringstream os;
        os.precision(17);
        os << "first mismatch at node " << v << ", seed " << i << " (id "
           << id << "): sparse " << sparse << " vs dense " << x(i, v);
        r.detail = os.str();
        r.passed = false;
        break;
      }
    }
  }
  r.reported.emplace_back("seeds", static_cast<double>(s));
  return r;
}

ConvergenceTrace ConvergenceTraceFrom(const Graph& g, const Spectrum& spec, int k,
                             NodeId start_node, int t_max,
                             const MonteCarloOptions& options) {
  const NodeId n = g.num_nodes();
  if (start_node < 0 || start_node >= n) {
    Fail(ErrorCode::kOutOfRange, "start node outside the graph");
  }
  if (k < 1 || k > n) Fail(ErrorCode::kOutOfRange, "k outside [1, n]");
  if (options.runs < 1) Fail(ErrorCode::kInvalidArgument, "runs must be >= 1");
  if (t_max < 0) Fail(ErrorCode::kInvalidArgument, "t_max must be >= 0");
  CheckVariant(g, options.variant);

  std::vector<double> y0(n, 0.0);
  y0[start_node] = 1.0;
  const std::vector<double> qy0 = ProjectTopK(spec, k, y0);

  const int steps = t_max + 1;
  std::vector<double> dist(static_cast<std::size_t>(options.runs) * steps);
  std::vector<double> resid(dist.size());
  ParallelFor(options.runs, options.jobs, [&](std::int64_t run) {
    Rng rng(DeriveSeed(options.master_seed, run));
    std::vector<double> y = y0;
    for (int t = 0; t < steps; ++t) {
      if (t > 0) ApplyMatching(SampleMatching(g, options.variant, rng), y);
      const std::vector<double> qy = ProjectTopK(spec, k, y);
      dist[run * steps + t] = DistanceTo(qy0, y);
      resid[run * steps + t] = DistanceTo(qy, y);
    }
  });

  ConvergenceTrace out;
  out.start_node = start_node;
  out.k = k;
  out.runs = options.runs;
  out.q_norm = Norm(qy0);
  const double gap = std::max(0.0, 1.0 - spec.lambda(k));
  std::vector<double> column(options.runs);
  for (int t = 0; t < steps; ++t) {
    ConvergencePoint p;
    p.t = t;
    for (int run = 0; run < options.runs; ++run) {
      column[run] = dist[run * steps + t];
    }
    const MeanSe d = Summarize(column);
    p.dist_q = d.mean;
    p.dist_q_se = d.se;
    for (int run = 0; run < options.runs; ++run) {
      column[run] = resid[run * steps + t];
    }
    p.residual = Summarize(column).mean;
    p.bound_tight = std::sqrt(t * gap) * out.q_norm;
    p.bound = 2.0 * p.bound_tight;
    out.points.push_back(p);
  }
  return out;
}

CheckResult ConvergenceBoundCheck(const ConvergenceTrace& trace) {
  CheckResult r;
  r.name = "convergence-bound";
  const ConvergencePoint& last = trace.points.back();
  r.observed = last.dist_q;
  r.limit = last.bound + 3.0 * last.dist_q_se;
  r.passed = r.observed <= r.limit;
  r.reported.emplace_back("t", last.t);
  r.reported.emplace_back("dist_q_se", last.dist_q_se);
  r.reported.emplace_back("bound", last.bound);
  r.reported.emplace_back("bound_tight", last.bound_tight);
  r.reported.emplace_back("residual", last.residual);
  r.reported.emplace_back("runs", trace.runs);
  return r;
}

ClusterDistanceResult ClusterDistanceCheck(const Graph& g, const Partition& planted,
                         const ClusterBasis& basis, const GoodNodeResult& good,
                         NodeId node, double beta, int rounds,
                         double ratio_cap, const MonteCarloOptions& options,
                         double exact_tol) {
  const NodeId n = g.num_nodes();
  if (planted.num_nodes() != n) {
    Fail(ErrorCode::kMismatch, "planted partition does not cover the graph");
  }
  if (node < 0 || node >= n) Fail(ErrorCode::kOutOfRange, "node outside graph");
  if (!(beta > 0.0 && beta <= 0.5)) {
    Fail(ErrorCode::kInvalidArgument, "beta outside (0, 1/2]");
  }
  if (options.runs < 1) Fail(ErrorCode::kInvalidArgument, "runs must be >= 1");
  if (rounds < 0) Fail(ErrorCode::kInvalidArgument, "rounds must be >= 0");
  CheckVariant(g, options.variant);

  ClusterDistanceResult out;
  out.node = node;
  out.node_good = node < static_cast<NodeId>(good.good.size()) && good.good[node];
  if (!out.node_good) out.warning = "node " + std::to_string(node) + " is not good";
  out.cluster = planted.cluster_of(node);
  out.rounds = rounds;
  out.runs = options.runs;
  out.ratio_cap = ratio_cap;
  const std::vector<NodeId> members = planted.Members(out.cluster);
  const std::vector<double> target = NormalizedIndicator(n, members);

  std::vector<double> dist(options.runs);
  ParallelFor(options.runs, options.jobs, [&](std::int64_t run) {
    Rng rng(DeriveSeed(options.master_seed, run));
    std::vector<double> y(n, 0.0);
    y[node] = 1.0;
    for (int t = 0; t < rounds; ++t) {
      ApplyMatching(SampleMatching(g, options.variant, rng), y);
    }
    dist[run] = DistanceTo(y, target);
  });
  const MeanSe d = Summarize(dist);
  out.mean_dist = d.mean;
  out.dist_se = d.se;
  // An exact basis (rounding-level distortion) has a zero scale.
  const double eps = good.exact_basis ? 0.0 : basis.epsilon_observed;
  out.reference_scale =
      basis.k * eps *
      std::sqrt(std::log(static_cast<double>(n)) * std::log(1.0 / beta) /
                (beta * n));
  if (out.reference_scale > 0.0) {
    out.ratio = out.mean_dist / out.reference_scale;
    out.passed = out.mean_dist <= ratio_cap * out.reference_scale;
  } else {
    out.ratio = out.mean_dist > 0.0 ? std::numeric_limits<double>::infinity()
                                    : 0.0;
    out.passed = out.mean_dist <= exact_tol;
  }
  return out;
}

namespace {

using Table = std::vector<std::vector<std::int64_t>>;

// best[mask] over clusters processed so far; choice records, per cluster,
// which label (or -1) each mask was reached with.
std::vector<int> ExactAssignment(const Table& agree, int clusters) {
  const int labels = static_cast<int>(agree.size());
  const int full = 1 << labels;
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();
  std::vector<std::int64_t> best(full, kNone);
  best[0] = 0;
  std::vector<std::vector<std::int8_t>> choice(
      clusters, std::vector<std::int8_t>(full, -2));
  for (int c = 0; c < clusters; ++c) {
    std::vector<std::int64_t> next = best;
    for (int mask = 0; mask < full; ++mask) {
      if (best[mask] != kNone) choice[c][mask] = -1;
    }
    for (int mask = 0; mask < full; ++mask) {
      if (best[mask] == kNone) continue;
      for (int l = 0; l < labels; ++l) {
        if (mask & (1 << l)) continue;
        const int to = mask | (1 << l);
        const std::int64_t value = best[mask] + agree[l][c];
        if (value > next[to]) {
          next[to] = value;
          choice[c][to] = static_cast<std::int8_t>(l);
        }
      }
    }
    best = std::move(next);
  }
  int mask = 0;
  for (int m = 1; m < full; ++m) {
    if (best[m] > best[mask]) mask = m;
  }
  std::vector<int> assign(labels, -1);
  for (int c = clusters - 1; c >= 0; --c) {
    const int l = choice[c][mask];
    if (l >= 0) {
      assign[l] = c;
      mask &= ~(1 << l);
    }
  }
  return assign;
}

std::vector<int> GreedyAssignment(const Table& agree, int clusters) {
  const int labels = static_cast<int>(agree.size());
  struct Cell {
    std::int64_t value;
    int label;
    int cluster;
  };
  std::vector<Cell> cells;
  for (int l = 0; l < labels; ++l) {
    for (int c = 0; c < clusters; ++c) {
      if (agree[l][c] > 0) cells.push_back({agree[l][c], l, c});
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.value > b.value;
  });
  std::vector<int> assign(labels, -1);
  std::vector<int> owner(clusters, -1);
  for (const Cell& cell : cells) {
    if (assign[cell.label] == -1 && owner[cell.cluster] == -1) {
      assign[cell.label] = cell.cluster;
      owner[cell.cluster] = cell.label;
    }
  }
  auto value = [&](int l, int c) { return c < 0 ? 0 : agree[l][c]; };
  // Pairwise refinement: swap the targets of two labels, or move a label to
  // a free cluster, while that strictly increases agreement.
  bool improved = true;
  while (improved) {
    improved = false;
    for (int a = 0; a < labels; ++a) {
      for (int b = a + 1; b < labels; ++b) {
        const int ca = assign[a];
        const int cb = assign[b];
        if (value(a, cb) + value(b, ca) > value(a, ca) + value(b, cb)) {
          assign[a] = cb;
          assign[b] = ca;
          if (cb >= 0) owner[cb] = a;
          if (ca >= 0) owner[ca] = b;
          improved = true;
        }
      }
      for (int c = 0; c < clusters; ++c) {
        if (owner[c] == -1 && agree[a][c] > value(a, assign[a])) {
          if (assign[a] >= 0) owner[assign[a]] = -1;
          assign[a] = c;
          owner[c] = a;
          improved = true;
        }
      }
    }
  }
  return assign;
}

}  // namespace

MisclassificationResult Misclassification(std::span<const SeedId> labels,
                                          std::span<const char> labeled,
                                          const Partition& planted,
                                          bool force_greedy) {
  const NodeId n = planted.num_nodes();
  if (static_cast<NodeId>(labels.size()) != n ||
      static_cast<NodeId>(labeled.size()) != n) {
    Fail(ErrorCode::kMismatch, "one label per planted node required");
  }
  std::vector<SeedId> distinct;
  for (NodeId v = 0; v < n; ++v) {
    if (labeled[v]) distinct.push_back(labels[v]);
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const int k = planted.num_clusters();
  Table agree(distinct.size(), std::vector<std::int64_t>(k, 0));
  MisclassificationResult out;
  NodeId labeled_count = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (!labeled[v]) {
      ++out.unlabeled;
      continue;
    }
    ++labeled_count;
    const auto l = std::lower_bound(distinct.begin(), distinct.end(), labels[v]) -
                   distinct.begin();
    ++agree[l][planted.cluster_of(v)];
  }
  out.heuristic = force_greedy ||
                  static_cast<int>(distinct.size()) > kExactAssignmentMaxLabels;
  const std::vector<int> assign = out.heuristic
                                      ? GreedyAssignment(agree, k)
                                      : ExactAssignment(agree, k);
  std::int64_t agreement = 0;
  for (std::size_t l = 0; l < distinct.size(); ++l) {
    if (assign[l] >= 0) agreement += agree[l][assign[l]];
    out.mapping.emplace_back(distinct[l], assign[l]);
  }
  out.lenient_count = labeled_count - static_cast<NodeId>(agreement);
  out.count = out.lenient_count + out.unlabeled;
  out.fraction = n > 0 ? static_cast<double>(out.count) / n : 0.0;
  out.lenient_fraction =
      n > 0 ? static_cast<double>(out.lenient_count) / n : 0.0;
  return out;
}

SeedCoverage Coverage(std::span<const ActiveSeed> seeds,
                      const Partition& planted) {
  SeedCoverage out;
  out.clusters = planted.num_clusters();
  out.per_cluster.assign(out.clusters, 0);
  for (const ActiveSeed& s : seeds) ++out.per_cluster[planted.cluster_of(s.node)];
  for (int c : out.per_cluster) out.seeded_clusters += c > 0 ? 1 : 0;
  out.all_seeded = out.seeded_clusters == out.clusters;
  return out;
}

CoverageProbability SeedCoverageProbability(const Partition& planted,
                                            double beta, int executions,
                                            std::uint64_t master_seed,
                                            int jobs) {
  if (executions < 1) {
    Fail(ErrorCode::kInvalidArgument, "executions must be >= 1");
  }
  const NodeId n = planted.num_nodes();
  std::vector<SeedId> ids(n);
  for (NodeId v = 0; v < n; ++v) ids[v] = static_cast<SeedId>(v) + 1;
  std::vector<char> covered(executions, 0);
  ParallelFor(executions, jobs, [&](std::int64_t r) {
    Rng rng(DeriveSeed(master_seed, r));
    const SeedingResult s = Seeding(n, ids, beta, rng);
    covered[r] = Coverage(s.seeds, planted).all_seeded ? 1 : 0;
  });
  CoverageProbability out;
  out.executions = executions;
  for (char c : covered) out.covered += c;
  out.fraction = static_cast<double>(out.covered) / executions;
  out.sigma = std::sqrt(out.fraction * (1.0 - out.fraction) / executions);
  out.bound = 1.0 - std::exp(-3.0);
  out.passed = out.fraction >= out.bound - 3.0 * out.sigma;
  return out;
}

ClusteringReport BuildClusteringReport(const RunTrace& trace,
                                 const Partition& planted,
                                 const GoodNodeResult* good,
                                 std::optional<GapReport> gap,
                                 std::string gap_error) {
  ClusteringReport out;
  out.n = planted.num_nodes();
  out.k = planted.num_clusters();
  out.rounds = trace.rounds;
  out.seeding_trials = trace.seeding_trials;
  out.seeds = static_cast<int>(trace.seeds.size());
  out.misclassification =
      Misclassification(trace.labels, trace.labeled, planted);
  out.words = trace.words;
  out.word_bound = static_cast<double>(trace.rounds) * out.n *
                   static_cast<double>(trace.seeding_trials);
  out.words_over_bound = out.word_bound > 0.0 ? out.words / out.word_bound : 0.0;
  const double klogk = out.k * std::log(static_cast<double>(out.k));
  const double form = static_cast<double>(trace.rounds) * out.n * klogk;
  out.words_over_klogk = form > 0.0 ? out.words / form : 0.0;
  out.coverage = Coverage(trace.seeds, planted);
  for (const ActiveSeed& s : trace.seeds) {
    SeedQuality q;
    q.seed = s;
    q.cluster = planted.cluster_of(s.node);
    q.good = good != nullptr && s.node < static_cast<NodeId>(good->good.size()) &&
             good->good[s.node];
    out.seed_quality.push_back(q);
  }
  out.gap = std::move(gap);
  out.gap_error = std::move(gap_error);
  return out;
}

}  // namespace loadcluster
