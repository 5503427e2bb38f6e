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

#include "loadcluster/matching.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "loadcluster/error.h"
#include "loadcluster/jacobi.h"
#include "loadcluster/spectral.h"

namespace loadcluster {

void Matching::Add(NodeId u, NodeId v) {
  if (u == v || u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes()) {
    Fail(ErrorCode::kInvalidArgument, "invalid matching pair " +
                                          std::to_string(u) + "-" +
                                          std::to_string(v));
  }
  if (partner_[u] != kUnmatched || partner_[v] != kUnmatched) {
    Fail(ErrorCode::kInvalidArgument,
         "pair " + std::to_string(u) + "-" + std::to_string(v) +
             " reuses an already matched node");
  }
  partner_[u] = v;
  partner_[v] = u;
  pairs_.push_back({std::min(u, v), std::max(u, v)});
}

void Matching::Canonicalize() { std::sort(pairs_.begin(), pairs_.end()); }

bool Matching::IsValidFor(const Graph& g) const {
  if (num_nodes() != g.num_nodes()) return false;
  std::vector<char> used(g.num_nodes(), 0);
  for (const Edge& e : pairs_) {
    if (e.u == e.v || used[e.u] || used[e.v]) return false;
    if (!g.HasEdge(e.u, e.v)) return false;
    used[e.u] = used[e.v] = 1;
  }
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (static_cast<bool>(used[v]) != matched(v)) return false;
  }
  return true;
}

Matrix Matching::ToMatrix() const {
  const NodeId n = num_nodes();
  Matrix m = Matrix::Identity(n);
  for (const Edge& e : pairs_) {
    m(e.u, e.u) = 0.5;
    m(e.v, e.v) = 0.5;
    m(e.u, e.v) = 0.5;
    m(e.v, e.u) = 0.5;
  }
  return m;
}

std::string VariantName(const ProtocolVariant& v) {
  return v.emulated() ? "almost-regular:" + std::to_string(v.lift_degree)
                      : "regular";
}

ProtocolVariant ParseVariant(std::string_view text) {
  if (text == "regular") return ProtocolVariant::Regular();
  constexpr std::string_view kPrefix = "almost-regular:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    const std::string_view digits = text.substr(kPrefix.size());
    int d = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && d > 0) {
      return ProtocolVariant::AlmostRegular(d);
    }
  }
  Fail(ErrorCode::kParse, "unknown protocol variant '" + std::string(text) +
                              "' (expected regular or almost-regular:<D>)");
}

void CheckVariant(const Graph& g, const ProtocolVariant& variant) {
  if (variant.emulated() && variant.lift_degree < g.max_degree()) {
    Fail(ErrorCode::kInvalidArgument,
         "almost-regular emulation needs D >= max degree (" +
             std::to_string(variant.lift_degree) + " < " +
             std::to_string(g.max_degree()) + ")");
  }
}

int ProposalSlots(const Graph& g, const ProtocolVariant& variant, NodeId v) {
  return variant.emulated() ? variant.lift_degree : g.degree(v);
}

namespace {

// choice[v] < 0: non-active. Otherwise v is active and picked slot choice[v].
Matching ResolveProposals(const Graph& g, std::span<const int> choice,
                          std::vector<int>& proposals,
                          std::vector<NodeId>& proposer) {
  const NodeId n = g.num_nodes();
  std::fill(proposals.begin(), proposals.end(), 0);
  for (NodeId v = 0; v < n; ++v) {
    const int slot = choice[v];
    if (slot < 0 || slot >= g.degree(v)) continue;
    const NodeId w = g.neighbors(v)[slot];
    if (choice[w] >= 0) continue;  // active nodes do not accept
    ++proposals[w];
    proposer[w] = v;
  }
  Matching m(n);
  for (NodeId w = 0; w < n; ++w) {
    if (choice[w] < 0 && proposals[w] == 1) m.Add(proposer[w], w);
  }
  m.Canonicalize();
  return m;
}

}  // namespace

Matching SampleMatching(const Graph& g, const ProtocolVariant& variant,
                        Rng& rng) {
  CheckVariant(g, variant);
  const NodeId n = g.num_nodes();
  std::bernoulli_distribution coin(0.5);
  std::vector<int> choice(n, -1);
  std::vector<char> active(n, 0);
  for (NodeId v = 0; v < n; ++v) active[v] = coin(rng);
  for (NodeId v = 0; v < n; ++v) {
    if (!active[v]) continue;
    const int slots = ProposalSlots(g, variant, v);
    if (slots == 0) {
      choice[v] = 0;  // active, nobody to propose to
      continue;
    }
    std::uniform_int_distribution<int> pick(0, slots - 1);
    choice[v] = pick(rng);
  }
  std::vector<int> proposals(n);
  std::vector<NodeId> proposer(n, -1);
  return ResolveProposals(g, choice, proposals, proposer);
}

double Dbar(int d) {
  if (d < 1) Fail(ErrorCode::kInvalidArgument, "dbar needs d >= 1");
  return std::pow(1.0 - 1.0 / (2.0 * d), d - 1);
}

double EdgeInclusionProbability(int d) { return Dbar(d) / (2.0 * d); }

void ApplyMatching(const Matching& m, std::span<double> loads) {
  if (loads.size() != static_cast<std::size_t>(m.num_nodes())) {
    Fail(ErrorCode::kMismatch, "load vector length " +
                                   std::to_string(loads.size()) +
                                   " != matching size " +
                                   std::to_string(m.num_nodes()));
  }
  for (const Edge& e : m.pairs()) {
    const double avg = (loads[e.u] + loads[e.v]) / 2.0;
    loads[e.u] = avg;
    loads[e.v] = avg;
  }
}

std::vector<double> Averaged(const Matching& m,
                             std::span<const double> loads) {
  std::vector<double> out(loads.begin(), loads.end());
  ApplyMatching(m, std::span<double>(out));
  return out;
}

void ApplyMatching(const Matching& m, Matrix& loads) {
  for (std::size_t r = 0; r < loads.rows(); ++r) ApplyMatching(m, loads.row(r));
}

FormulaContext WalkForVariant(const Graph& g, const ProtocolVariant& variant) {
  CheckVariant(g, variant);
  if (variant.emulated()) {
    return {RandomWalkMatrix(LiftToRegular(g, variant.lift_degree)),
            variant.lift_degree};
  }
  if (g.has_self_loop_weights() || g.min_degree() != g.max_degree()) {
    Fail(ErrorCode::kInvalidArgument,
         "the regular protocol's expectation formula needs a regular graph");
  }
  return {RandomWalkMatrix(g), g.max_degree()};
}

Matrix ExpectedMatchingFormula(const Graph& g, const ProtocolVariant& variant) {
  FormulaContext ctx = WalkForVariant(g, variant);
  const double dbar = Dbar(ctx.degree);
  Matrix out = Matrix::Identity(g.num_nodes()) * (1.0 - dbar / 4.0);
  out += ctx.walk * (dbar / 4.0);
  return out;
}

std::uint64_t OutcomeCount(const Graph& g, const ProtocolVariant& variant) {
  std::uint64_t total = 1;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::uint64_t options =
        1 + static_cast<std::uint64_t>(
                std::max(1, ProposalSlots(g, variant, v)));
    total *= options;
    if (total > kEnumerationCap) return kEnumerationCap + 1;
  }
  return total;
}

void ForEachOutcome(
    const Graph& g, const ProtocolVariant& variant,
    const std::function<void(double, const Matching&)>& visit) {
  CheckVariant(g, variant);
  const std::uint64_t count = OutcomeCount(g, variant);
  if (count > kEnumerationCap) {
    Fail(ErrorCode::kTooLarge,
         "protocol enumeration refused: more than " +
             std::to_string(kEnumerationCap) + " outcomes");
  }
  const NodeId n = g.num_nodes();
  std::vector<int> slots(n);
  for (NodeId v = 0; v < n; ++v) {
    slots[v] = std::max(1, ProposalSlots(g, variant, v));
  }
  // Mixed-radix odometer: digit 0 is non-active, digit s + 1 is active with
  // slot s.
  std::vector<int> digit(n, 0);
  std::vector<int> choice(n, -1);
  std::vector<int> proposals(n);
  std::vector<NodeId> proposer(n, -1);
  for (std::uint64_t outcome = 0; outcome < count; ++outcome) {
    double prob = 1.0;
    for (NodeId v = 0; v < n; ++v) {
      choice[v] = digit[v] - 1;
      prob *= digit[v] == 0 ? 0.5 : 0.5 / slots[v];
    }
    visit(prob, ResolveProposals(g, choice, proposals, proposer));
    for (NodeId v = 0; v < n; ++v) {
      if (++digit[v] <= slots[v]) break;
      digit[v] = 0;
    }
  }
}

Matrix EnumerateExpectedMatrix(const Graph& g, const ProtocolVariant& variant) {
  const NodeId n = g.num_nodes();
  Matrix expected(n, n);
  ForEachOutcome(g, variant, [&](double prob, const Matching& m) {
    for (NodeId v = 0; v < n; ++v) {
      expected(v, v) += prob * (m.matched(v) ? 0.5 : 1.0);
    }
    for (const Edge& e : m.pairs()) {
      expected(e.u, e.v) += prob * 0.5;
      expected(e.v, e.u) += prob * 0.5;
    }
  });
  return expected;
}

MonteCarloMatrix MonteCarloExpectedMatrix(const Graph& g,
                                          const ProtocolVariant& variant,
                                          std::int64_t trials, Rng& rng) {
  if (trials < 1) Fail(ErrorCode::kInvalidArgument, "need at least one trial");
  const NodeId n = g.num_nodes();
  // Every entry of M is 1/2 times a Bernoulli indicator (off-diagonal) or
  // 1 minus that (diagonal), so hit counts determine mean and variance.
  std::vector<std::int64_t> pair_hits(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::int64_t> node_hits(n, 0);
  for (std::int64_t t = 0; t < trials; ++t) {
    const Matching m = SampleMatching(g, variant, rng);
    for (const Edge& e : m.pairs()) {
      ++pair_hits[static_cast<std::size_t>(e.u) * n + e.v];
      ++pair_hits[static_cast<std::size_t>(e.v) * n + e.u];
      ++node_hits[e.u];
      ++node_hits[e.v];
    }
  }
  const double count = static_cast<double>(trials);
  auto standard_error = [&](std::int64_t hits) {
    if (trials < 2) return 0.0;
    const double h = static_cast<double>(hits);
    const double var = 0.25 * (h - h * h / count) / (count - 1.0);
    return std::sqrt(std::max(0.0, var) / count);
  };
  MonteCarloMatrix out{Matrix(n, n), Matrix(n, n), trials};
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      const std::int64_t hits =
          u == v ? node_hits[u] : pair_hits[static_cast<std::size_t>(u) * n + v];
      const double frac = 0.5 * static_cast<double>(hits) / count;
      out.mean(u, v) = u == v ? 1.0 - frac : frac;
      out.standard_error(u, v) = standard_error(hits);
    }
  }
  return out;
}

CheckResult CheckDomination(const Graph& g, int ell,
                            const ProtocolVariant& variant, double tol) {
  if (ell < 0) Fail(ErrorCode::kInvalidArgument, "walk length must be >= 0");
  const FormulaContext ctx = WalkForVariant(g, variant);
  const NodeId n = g.num_nodes();
  const Matrix p_ell = Power(ctx.walk, ell);
  const Matrix p_next = Multiply(p_ell, ctx.walk);

  Matrix expected(n, n);
  ForEachOutcome(g, variant, [&](double prob, const Matching& m) {
    const Matrix mm = m.ToMatrix();
    expected += Multiply(Multiply(mm, p_ell), mm) * prob;
  });

  const double dbar = Dbar(ctx.degree);
  Matrix bound = p_ell * (1.0 - dbar / 8.0) + p_next * (dbar / 8.0);
  const Matrix gap = bound - expected;

  CheckResult result;
  result.name = "walk-domination";
  result.observed = MinEigenvalue(gap, JacobiOptions{.symmetry_tolerance = 1e-10});
  result.limit = -tol;
  result.passed = result.observed >= -tol;
  result.detail = "min eigenvalue of (1-dbar/8)P^l + (dbar/8)P^(l+1) - "
                  "E[M P^l M], l = " + std::to_string(ell);
  result.reported.emplace_back("ell", ell);
  result.reported.emplace_back("dbar", dbar);
  return result;
}

std::string FormatMatchingTrace(std::span<const Matching> rounds) {
  std::string out;
  for (const Matching& m : rounds) {
    bool first = true;
    for (const Edge& e : m.pairs()) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(e.u);
      out += '-';
      out += std::to_string(e.v);
    }
    out += '\n';
  }
  return out;
}

std::vector<Matching> ParseMatchingTrace(std::string_view text, NodeId n) {
  std::vector<Matching> rounds;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    Matching m(n);
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos == line.size()) break;
      std::size_t tok_end = line.find(' ', pos);
      if (tok_end == std::string_view::npos) tok_end = line.size();
      const std::string_view token = line.substr(pos, tok_end - pos);
      const std::size_t dash = token.find('-');
      long long u = -1;
      long long v = -1;
      bool ok = dash != std::string_view::npos;
      if (ok) {
        auto r1 = std::from_chars(token.data(), token.data() + dash, u);
        auto r2 = std::from_chars(token.data() + dash + 1,
                                  token.data() + token.size(), v);
        ok = r1.ec == std::errc() && r1.ptr == token.data() + dash &&
             r2.ec == std::errc() && r2.ptr == token.data() + token.size() &&
             u >= 0 && v >= 0 && u < n && v < n;
      }
      if (!ok) {
        Fail(ErrorCode::kParse, "matching trace line " +
                                    std::to_string(line_no) + ": bad token '" +
                                    std::string(token) + "'");
      }
      m.Add(static_cast<NodeId>(u), static_cast<NodeId>(v));
      pos = tok_end;
    }
    m.Canonicalize();
    rounds.push_back(std::move(m));
    start = end + 1;
  }
  return rounds;
}

}  // namespace loadcluster
