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

#ifndef LOADCLUSTER_MATCHING_H_
#define LOADCLUSTER_MATCHING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcluster/check.h"
#include "loadcluster/dense_matrix.h"
#include "loadcluster/graph.h"
#include "loadcluster/rng.h"

namespace loadcluster {

// A set of disjoint node pairs. Pairs are stored as (min, max) sorted by the
// first endpoint.
class Matching {
 public:
  Matching() = default;
  explicit Matching(NodeId n) : partner_(n, kUnmatched) {}

  // Throws Error(kInvalidArgument) if a node is already matched or u == v.
  void Add(NodeId u, NodeId v);
  // Sorts pairs; called by the samplers once a round is complete.
  void Canonicalize();

  NodeId num_nodes() const { return static_cast<NodeId>(partner_.size()); }
  std::span<const Edge> pairs() const { return pairs_; }
  bool matched(NodeId v) const { return partner_[v] != kUnmatched; }
  NodeId partner(NodeId v) const { return partner_[v]; }
  bool empty() const { return pairs_.empty(); }

  // Pairwise disjoint and every pair an edge of g.
  bool IsValidFor(const Graph& g) const;

  // The matching matrix: 1/2 on the 2x2 block of each pair, 1 on the
  // diagonal of unmatched nodes.
  Matrix ToMatrix() const;

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.pairs_ == b.pairs_ && a.partner_ == b.partner_;
  }

  static constexpr NodeId kUnmatched = -1;

 private:
  std::vector<Edge> pairs_;
  std::vector<NodeId> partner_;
};

// Regular: the three-step protocol verbatim (active w.p. 1/2; each active
// node proposes to a uniform neighbor; a non-active node with exactly one
// proposal is matched to its proposer).
//
// AlmostRegularEmulation(D): the same protocol run on the lift G* without
// materializing it. An active node picks uniformly among D slots, of which
// degree(v) are its real neighbors; picking one of the D - degree(v)
// self-slots makes no proposal.
struct ProtocolVariant {
  enum class Kind { kRegular, kAlmostRegularEmulation };
  Kind kind = Kind::kRegular;
  int lift_degree = 0;

  static ProtocolVariant Regular() { return {}; }
  static ProtocolVariant AlmostRegular(int d) {
    return {Kind::kAlmostRegularEmulation, d};
  }
  bool emulated() const { return kind == Kind::kAlmostRegularEmulation; }
};

std::string VariantName(const ProtocolVariant& v);
// "regular" or "almost-regular:<D>".
ProtocolVariant ParseVariant(std::string_view text);

// Throws Error(kInvalidArgument) if the variant cannot run on g.
void CheckVariant(const Graph& g, const ProtocolVariant& variant);

// Number of choices an active node has: its degree, or D for the emulation.
int ProposalSlots(const Graph& g, const ProtocolVariant& variant, NodeId v);

Matching SampleMatching(const Graph& g, const ProtocolVariant& variant,
                        Rng& rng);

// (1 - 1/(2d))^(d - 1).
double Dbar(int d);
// dbar(d) / (2d): probability that a given edge of a d-regular graph is
// matched in one round.
double EdgeInclusionProbability(int d);

// loads[v] <- average over v's pair. Length must equal the matching's n.
void ApplyMatching(const Matching& m, std::span<double> loads);
// Copying form of the above.
std::vector<double> Averaged(const Matching& m,
                             std::span<const double> loads);
// Same matching on every row (one row per load dimension).
void ApplyMatching(const Matching& m, Matrix& loads);

// Lifted graph and degree the expected-matching formula uses for this variant.
struct FormulaContext {
  Matrix walk;
  int degree = 0;
};
FormulaContext WalkForVariant(const Graph& g, const ProtocolVariant& variant);

// (1 - dbar/4) I + (dbar/4) P.
Matrix ExpectedMatchingFormula(const Graph& g, const ProtocolVariant& variant);

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

// Number of protocol outcomes, prod_v (1 + slots(v)), saturating at
// kEnumerationCap + 1.
std::uint64_t OutcomeCount(const Graph& g, const ProtocolVariant& variant);

// Calls visit(probability, matching) for every activation pattern and
// proposal choice. Throws Error(kTooLarge) above kEnumerationCap outcomes.
void ForEachOutcome(
    const Graph& g, const ProtocolVariant& variant,
    const std::function<void(double, const Matching&)>& visit);

// Exact E[M] by full enumeration of the protocol's randomness.
Matrix EnumerateExpectedMatrix(const Graph& g, const ProtocolVariant& variant);

struct MonteCarloMatrix {
  Matrix mean;
  Matrix standard_error;
  std::int64_t trials = 0;
};

MonteCarloMatrix MonteCarloExpectedMatrix(const Graph& g,
                                          const ProtocolVariant& variant,
                                          std::int64_t trials, Rng& rng);

// E[M P^l M] <= (1 - dbar/8) P^l + (dbar/8) P^(l+1) in the PSD order, with
// the expectation computed exactly by enumeration. `observed` is the minimum
// eigenvalue of bound - expectation; passes when it is >= -tol.
CheckResult CheckDomination(const Graph& g, int ell,
                            const ProtocolVariant& variant, double tol = 1e-10);

// One line per round, pairs as "u-v" tokens separated by spaces.
std::string FormatMatchingTrace(std::span<const Matching> rounds);
std::vector<Matching> ParseMatchingTrace(std::string_view text, NodeId n);

}  // namespace loadcluster

#endif  // LOADCLUSTER_MATCHING_H_
