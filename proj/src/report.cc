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

#include "loadcluster/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace loadcluster {

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Json JsonNumber(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(FormatNumber(x).c_str(), nullptr);
}

std::string SpectrumCsv(const Spectrum& spec) {
  std::ostringstream os;
  os << "index,eigenvalue\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    os << i + 1 << ',' << FormatNumber(spec.eigenvalues[i]) << '\n';
  }
  return os.str();
}

std::string BasisCsv(const ClusterBasis& basis, const GoodNodeResult& good) {
  std::ostringstream os;
  os << "node,alpha,good\n";
  for (std::size_t v = 0; v < basis.alpha.size(); ++v) {
    os << v << ',' << FormatNumber(basis.alpha[v]) << ','
       << (v < good.good.size() && good.good[v] ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string StatesCsv(const RunTrace& trace) {
  std::ostringstream os;
  os << "node,prefix,suffix\n";
  for (std::size_t v = 0; v < trace.final_states.size(); ++v) {
    for (const auto& e : trace.final_states[v].entries()) {
      os << v << ',' << e.prefix << ',' << FormatNumber(e.suffix) << '\n';
    }
  }
  return os.str();
}

std::string ConvergenceCsv(const ConvergenceTrace& trace) {
  std::ostringstream os;
  os << "t,distQ,distQ_se,bound,residual\n";
  for (const ConvergencePoint& p : trace.points) {
    os << p.t << ',' << FormatNumber(p.dist_q) << ','
       << FormatNumber(p.dist_q_se) << ',' << FormatNumber(p.bound) << ','
       << FormatNumber(p.residual) << '\n';
  }
  return os.str();
}

Json ToJson(const ProtocolConfig& cfg) {
  Json j;
  j["beta"] = JsonNumber(cfg.beta);
  j["cT"] = JsonNumber(cfg.c_t);
  j["roundsOverride"] =
      cfg.rounds_override ? Json(*cfg.rounds_override) : Json(nullptr);
  j["seed"] = cfg.seed;
  j["variant"] = VariantName(cfg.variant);
  return j;
}

Json ToJson(const GapReport& r) {
  Json j;
  j["k"] = r.k;
  j["n"] = r.n;
  j["volumeConvention"] = VolumeConventionName(r.convention);
  j["lambdaK"] = JsonNumber(r.lambda_k);
  j["lambdaK1"] = JsonNumber(r.lambda_k1);
  j["rhoUpper"] = JsonNumber(r.rho_upper);
  j["upsilon"] = JsonNumber(r.upsilon);
  j["beta"] = JsonNumber(r.beta);
  j["gapScore"] = JsonNumber(r.gap_score);
  j["cT"] = JsonNumber(r.c_t);
  j["T"] = r.rounds;
  j["wellClusteredConstant"] = JsonNumber(r.well_clustered_constant);
  j["wellClustered"] = r.well_clustered;
  j["epsilonFormula"] = JsonNumber(r.epsilon_formula);
  return j;
}

Json ToJson(const RunTrace& t) {
  Json j;
  j["config"] = ToJson(t.config);
  j["rounds"] = t.rounds;
  j["seedingTrials"] = t.seeding_trials;
  j["ids"] = t.ids;
  j["idCollisions"] = t.id_collisions;
  Json seeds = Json::array();
  for (const ActiveSeed& s : t.seeds) {
    seeds.push_back({{"node", s.node}, {"id", s.id}});
  }
  j["seeds"] = std::move(seeds);
  j["wordsExchanged"] = t.words;
  j["labels"] = t.labels;
  Json labeled = Json::array();
  for (char c : t.labeled) labeled.push_back(c != 0);
  j["labeled"] = std::move(labeled);
  j["unlabeledCount"] = t.unlabeled_count;
  j["emptyCount"] = t.empty_count;
  return j;
}

Json ToJson(const MisclassificationResult& r) {
  Json j;
  j["count"] = r.count;
  j["fraction"] = JsonNumber(r.fraction);
  j["unlabeled"] = r.unlabeled;
  j["lenientCount"] = r.lenient_count;
  j["lenientFraction"] = JsonNumber(r.lenient_fraction);
  j["heuristic"] = r.heuristic;
  Json mapping = Json::array();
  for (const auto& [label, cluster] : r.mapping) {
    mapping.push_back({{"label", label},
                       {"cluster", cluster >= 0 ? Json(cluster) : Json(nullptr)}});
  }
  j["mapping"] = std::move(mapping);
  return j;
}

Json ToJson(const ClusteringReport& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["rounds"] = r.rounds;
  j["seedingTrials"] = r.seeding_trials;
  j["seeds"] = r.seeds;
  j["misclassification"] = ToJson(r.misclassification);
  Json words;
  words["exchanged"] = r.words;
  words["bound"] = JsonNumber(r.word_bound);
  words["ratioToBound"] = JsonNumber(r.words_over_bound);
  words["ratioToTnKlogK"] = JsonNumber(r.words_over_klogk);
  words["withinBound"] = static_cast<double>(r.words) <= r.word_bound;
  j["words"] = std::move(words);
  Json coverage;
  coverage["clusters"] = r.coverage.clusters;
  coverage["seededClusters"] = r.coverage.seeded_clusters;
  coverage["allSeeded"] = r.coverage.all_seeded;
  coverage["perCluster"] = r.coverage.per_cluster;
  j["coverage"] = std::move(coverage);
  Json seeds = Json::array();
  for (const SeedQuality& q : r.seed_quality) {
    seeds.push_back({{"node", q.seed.node},
                     {"id", q.seed.id},
                     {"cluster", q.cluster},
                     {"good", q.good}});
  }
  j["seedQuality"] = std::move(seeds);
  if (r.gap) {
    j["gap"] = ToJson(*r.gap);
  } else {
    j["gap"] = nullptr;
    j["gapError"] = r.gap_error;
  }
  return j;
}

Json ToJson(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["observed"] = JsonNumber(c.observed);
  j["limit"] = JsonNumber(c.limit);
  if (!c.detail.empty()) j["detail"] = c.detail;
  Json reported = Json::object();
  for (const auto& [key, value] : c.reported) reported[key] = JsonNumber(value);
  j["reported"] = std::move(reported);
  return j;
}

Json ToJson(const CoverageProbability& r) {
  Json j;
  j["executions"] = r.executions;
  j["covered"] = r.covered;
  j["fraction"] = JsonNumber(r.fraction);
  j["sigma"] = JsonNumber(r.sigma);
  j["bound"] = JsonNumber(r.bound);
  j["passed"] = r.passed;
  return j;
}

Json ToJson(const ClusterDistanceResult& r) {
  Json j;
  j["node"] = r.node;
  j["nodeGood"] = r.node_good;
  j["cluster"] = r.cluster;
  j["rounds"] = r.rounds;
  j["runs"] = r.runs;
  j["meanDist"] = JsonNumber(r.mean_dist);
  j["distSe"] = JsonNumber(r.dist_se);
  j["referenceScale"] = JsonNumber(r.reference_scale);
  j["ratio"] = JsonNumber(r.ratio);
  j["ratioCap"] = JsonNumber(r.ratio_cap);
  j["passed"] = r.passed;
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

std::string Dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace loadcluster
