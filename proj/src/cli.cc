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

#include "loadcluster/cli.h"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "loadcluster/analysis.h"
#include "loadcluster/config.h"
#include "loadcluster/error.h"
#include "loadcluster/experiment.h"
#include "loadcluster/fixtures.h"
#include "loadcluster/graph_io.h"
#include "loadcluster/matching.h"
#include "loadcluster/parallel.h"
#include "loadcluster/protocol.h"
#include "loadcluster/report.h"

namespace loadcluster {
namespace {

// Fixed sizes of the statistical suites.
constexpr std::int64_t kExpectedMatchingTrials = 100'000;
constexpr NodeId kExpectedMatchingNodes = 100;
constexpr int kProjectionMatchings = 1'000;
constexpr int kCoverageExecutions = 1'000;

struct Context {
  ExperimentConfig cfg;
  int jobs = 1;
  std::string command;
  std::ostream* out = nullptr;
};

std::filesystem::path OutputPath(const Context& ctx, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(ctx.cfg.output_dir, ec);
  if (ec) {
    Fail(ErrorCode::kIo, "cannot create output directory " +
                             ctx.cfg.output_dir + ": " + ec.message());
  }
  return std::filesystem::path(ctx.cfg.output_dir) / name;
}

void Emit(const Context& ctx, const std::string& name,
          const std::string& content) {
  const std::filesystem::path path = OutputPath(ctx, name);
  WriteFile(path.string(), content);
  *ctx.out << "wrote " << path.string() << "\n";
}

Json ConfigJson(const ExperimentConfig& cfg) {
  Json j = Json::object();
  for (const std::string& key : ConfigKeys()) j[key] = GetConfigValue(cfg, key);
  return j;
}

Json Envelope(const Context& ctx) {
  Json j;
  j["command"] = ctx.command;
  j["config"] = ConfigJson(ctx.cfg);
  return j;
}

struct GraphInput {
  std::string graph_file;
  std::string partition_file;
};

ClusteredGraph LoadOrGenerate(const Context& ctx, const GraphInput& in) {
  if (in.graph_file.empty()) {
    if (!in.partition_file.empty()) {
      Fail(ErrorCode::kInvalidArgument, "--partition requires --graph");
    }
    return GenerateFromConfig(ctx.cfg);
  }
  Graph g = ReadEdgeList(in.graph_file);
  if (in.partition_file.empty()) {
    Fail(ErrorCode::kInvalidArgument, "--graph requires --partition");
  }
  Partition p = ReadPartition(in.partition_file);
  return {std::move(g), std::move(p)};
}

Json ValidationJson(const ValidationReport& r) {
  Json j;
  j["simple"] = r.simple();
  j["connected"] = r.connected;
  j["components"] = r.components;
  j["regular"] = r.regular;
  j["degree"] = r.degree ? Json(*r.degree) : Json(nullptr);
  j["maxDegree"] = r.max_degree;
  j["minDegree"] = r.min_degree;
  return j;
}

int CmdGenerate(const Context& ctx) {
  const ClusteredGraph cg = GenerateFromConfig(ctx.cfg);
  Emit(ctx, "graph.edges", FormatEdgeList(cg.graph));
  Emit(ctx, "planted.part", FormatPartition(cg.partition));
  Json doc = Envelope(ctx);
  doc["graphSeed"] = DeriveSeed(ctx.cfg.master_seed, kGraphStream);
  doc["nodes"] = cg.graph.num_nodes();
  doc["edges"] = cg.graph.num_edges();
  doc["validation"] = ValidationJson(Validate(cg.graph));
  doc["files"] = {"graph.edges", "planted.part"};
  Emit(ctx, "generate.json", Dump(doc));
  return kExitOk;
}

int CmdSpectra(const Context& ctx, const GraphInput& in) {
  ClusteredGraph cg = LoadOrGenerate(ctx, in);
  const Instance inst =
      PrepareInstance(std::move(cg.graph), std::move(cg.partition), ctx.cfg);
  Emit(ctx, "spectrum.csv", SpectrumCsv(inst.spectrum));
  Json doc = Envelope(ctx);
  doc["rounds"] = inst.rounds;
  doc["maxResidual"] = JsonNumber(inst.spectrum.max_residual);
  if (inst.gap) {
    doc["gapReport"] = ToJson(*inst.gap);
  } else {
    doc["gapReport"] = nullptr;
    doc["error"] = {{"stage", "gap-report"}, {"message", inst.gap_error}};
  }
  if (inst.basis) {
    doc["epsilonObserved"] = JsonNumber(inst.basis->epsilon_observed);
    doc["goodNodes"] = inst.good->good_nodes.size();
    doc["goodThreshold"] = JsonNumber(inst.good->threshold);
    Emit(ctx, "basis.csv", BasisCsv(*inst.basis, *inst.good));
  } else {
    doc["basisError"] = inst.basis_error;
  }
  Emit(ctx, "gap_report.json", Dump(doc));
  const int k = inst.planted.num_clusters();
  *ctx.out << "k = " << k << ", lambda_k = "
           << FormatNumber(inst.spectrum.lambda(k));
  if (static_cast<std::size_t>(k) < inst.spectrum.size()) {
    *ctx.out << ", lambda_k+1 = " << FormatNumber(inst.spectrum.lambda(k + 1));
  }
  *ctx.out << ", T = " << inst.rounds << "\n";
  if (inst.gap) {
    *ctx.out << "upsilon = " << FormatNumber(inst.gap->upsilon)
             << ", gap score = " << FormatNumber(inst.gap->gap_score) << "\n";
  } else {
    *ctx.out << "gap report unavailable: " << inst.gap_error << "\n";
  }
  return kExitOk;
}

int CmdRun(const Context& ctx, const GraphInput& in, const std::string& replay) {
  ClusteredGraph cg = LoadOrGenerate(ctx, in);
  const Instance inst =
      PrepareInstance(std::move(cg.graph), std::move(cg.partition), ctx.cfg);
  const ProtocolConfig pcfg =
      ProtocolFor(ctx.cfg, inst.graph, TrialSeed(ctx.cfg.master_seed, 0));
  RunTrace trace;
  if (replay.empty()) {
    trace = RunProtocol(inst.graph, pcfg, inst.rounds);
  } else {
    trace = ReplayProtocol(
        inst.graph, pcfg,
        ParseMatchingTrace(ReadFile(replay), inst.graph.num_nodes()));
  }
  const ClusteringReport report = BuildClusteringReport(
      trace, inst.planted, inst.good ? &*inst.good : nullptr, inst.gap,
      inst.gap_error);

  Json trace_doc = Envelope(ctx);
  trace_doc["replayed"] = !replay.empty();
  trace_doc["run"] = ToJson(trace);
  Emit(ctx, "run_trace.json", Dump(trace_doc));
  Emit(ctx, "matchings.trace", FormatMatchingTrace(trace.matchings));
  Emit(ctx, "states.csv", StatesCsv(trace));
  Json report_doc = Envelope(ctx);
  report_doc["protocolSeed"] = pcfg.seed;
  report_doc["report"] = ToJson(report);
  Emit(ctx, "clustering_report.json", Dump(report_doc));

  *ctx.out << "rounds = " << trace.rounds << ", seeds = " << trace.seeds.size()
           << ", misclassification = "
           << FormatNumber(report.misclassification.fraction)
           << ", unlabeled = " << trace.unlabeled_count
           << ", words = " << trace.words << " (bound "
           << FormatNumber(report.word_bound) << ")\n";
  return kExitOk;
}

using SuiteResult = std::vector<CheckResult>;

SuiteResult SuiteExpectedMatchingExact(const Context&) {
  SuiteResult out;
  for (const Fixture& f : SmallFixtures()) out.push_back(ExpectedMatchingExactCheck(f));
  return out;
}

SuiteResult SuiteExpectedMatchingSampled(const Context& ctx) {
  Rng rng(AnalysisSeed(ctx.cfg.master_seed, 1));
  const Graph g = RandomRegular(kExpectedMatchingNodes, 3, rng);
  return {ExpectedMatchingMonteCarloCheck(g, ProtocolVariant::Regular(), kExpectedMatchingTrials,
                                rng)};
}

SuiteResult SuiteProjection(const Context& ctx) {
  Rng rng(AnalysisSeed(ctx.cfg.master_seed, 2));
  return {ProjectionCheck(kProjectionMatchings, rng)};
}

SuiteResult SuiteDomination(const Context&) {
  SuiteResult out;
  for (const Fixture& f : SmallFixtures()) {
    for (int ell = 0; ell <= 2; ++ell) {
      CheckResult r = CheckDomination(f.graph, ell, f.variant);
      r.name = "domination/" + f.name + "/l=" + std::to_string(ell);
      out.push_back(std::move(r));
    }
  }
  return out;
}

SuiteResult SuiteCheeger(const Context&) {
  SuiteResult out;
  for (const Fixture& f : BruteForceFixtures()) {
    for (int k = 2; k <= 3 && k <= f.graph.num_nodes(); ++k) {
      for (VolumeConvention conv :
           {VolumeConvention::kIncidentEdges, VolumeConvention::kDegreeSum}) {
        out.push_back(CheegerFixtureCheck(f, k, conv));
      }
    }
  }
  return out;
}

Instance ConfigInstance(const Context& ctx, const GraphInput& in) {
  ClusteredGraph cg = LoadOrGenerate(ctx, in);
  return PrepareInstance(std::move(cg.graph), std::move(cg.partition), ctx.cfg);
}

SuiteResult SuiteSparseDense(const Context& ctx, const GraphInput& in,
                             bool corrupt) {
  const Instance inst = ConfigInstance(ctx, in);
  const ProtocolConfig pcfg =
      ProtocolFor(ctx.cfg, inst.graph, TrialSeed(ctx.cfg.master_seed, 0));
  const RunTrace trace = RunProtocol(inst.graph, pcfg, inst.rounds);
  SparseDenseOutcome o = SparseDenseCheck(inst.graph, trace, corrupt);
  return {std::move(o.equivalence), std::move(o.mass)};
}

CheckResult MissingGoodNode(const std::string& name, const Instance& inst) {
  CheckResult r;
  r.name = name;
  r.passed = false;
  r.detail = inst.basis ? "no good node" : "no cluster basis: " + inst.basis_error;
  return r;
}

SuiteResult SuiteConvergence(const Context& ctx, const GraphInput& in) {
  const Instance inst = ConfigInstance(ctx, in);
  const std::optional<NodeId> start = FirstGoodNode(inst);
  if (!start) return {MissingGoodNode("convergence-bound", inst)};
  MonteCarloOptions mc;
  mc.runs = ctx.cfg.runs;
  mc.master_seed = AnalysisSeed(ctx.cfg.master_seed, 3);
  mc.jobs = ctx.jobs;
  mc.variant = inst.variant;
  const ConvergenceTrace trace =
      ConvergenceTraceFrom(inst.graph, inst.spectrum, inst.planted.num_clusters(),
                  *start, inst.rounds, mc);
  Emit(ctx, "convergence.csv", ConvergenceCsv(trace));
  CheckResult r = ConvergenceBoundCheck(trace);
  r.reported.emplace_back("start_node", *start);
  return {std::move(r)};
}

SuiteResult SuiteClusterDistance(const Context& ctx, const GraphInput& in) {
  const Instance inst = ConfigInstance(ctx, in);
  const std::optional<NodeId> node = FirstGoodNode(inst);
  if (!node) return {MissingGoodNode("cluster-distance", inst)};
  MonteCarloOptions mc;
  mc.runs = ctx.cfg.runs;
  mc.master_seed = AnalysisSeed(ctx.cfg.master_seed, 5);
  mc.jobs = ctx.jobs;
  mc.variant = inst.variant;
  const ClusterDistanceResult l5 =
      ClusterDistanceCheck(inst.graph, inst.planted, *inst.basis, *inst.good, *node,
                  ctx.cfg.beta, inst.rounds, ctx.cfg.ratio_cap, mc);
  CheckResult r;
  r.name = "cluster-distance";
  r.passed = l5.passed;
  r.observed = l5.mean_dist;
  r.limit = l5.reference_scale > 0.0 ? l5.ratio_cap * l5.reference_scale : 1e-9;
  r.detail = l5.warning;
  r.reported = {{"node", l5.node},
                {"dist_se", l5.dist_se},
                {"reference_scale", l5.reference_scale},
                {"ratio", l5.ratio},
                {"rounds", l5.rounds}};
  return {std::move(r)};
}

SuiteResult SuiteCoverage(const Context& ctx, const GraphInput& in) {
  const ClusteredGraph cg = LoadOrGenerate(ctx, in);
  const CoverageProbability c = SeedCoverageProbability(
      cg.partition, ctx.cfg.beta, kCoverageExecutions,
      AnalysisSeed(ctx.cfg.master_seed, 8), ctx.jobs);
  CheckResult r;
  r.name = "coverage-probability";
  r.passed = c.passed;
  r.observed = c.fraction;
  r.limit = c.bound - 3.0 * c.sigma;
  r.reported = {{"executions", c.executions},
                {"covered", c.covered},
                {"sigma", c.sigma},
                {"bound", c.bound}};
  return {std::move(r)};
}

int CmdVerify(const Context& ctx, const std::string& suite,
              const GraphInput& in, bool corrupt, std::ostream& err) {
  if (corrupt && suite != "sparse-dense") {
    err << "--corrupt only applies to the sparse-dense suite\n";
    return kExitUsage;
  }
  SuiteResult checks;
  if (suite == "lemma1-exact") {
    checks = SuiteExpectedMatchingExact(ctx);
  } else if (suite == "lemma1-mc") {
    checks = SuiteExpectedMatchingSampled(ctx);
  } else if (suite == "projection") {
    checks = SuiteProjection(ctx);
  } else if (suite == "eq4-domination") {
    checks = SuiteDomination(ctx);
  } else if (suite == "cheeger") {
    checks = SuiteCheeger(ctx);
  } else if (suite == "sparse-dense") {
    checks = SuiteSparseDense(ctx, in, corrupt);
  } else if (suite == "lemma3") {
    checks = SuiteConvergence(ctx, in);
  } else if (suite == "lemma5") {
    checks = SuiteClusterDistance(ctx, in);
  } else if (suite == "coverage-probability") {
    checks = SuiteCoverage(ctx, in);
  } else {
    err << "unknown verification suite '" << suite << "'; expected one of:";
    for (const std::string& s : VerifySuites()) err << ' ' << s;
    err << "\n";
    return kExitUsage;
  }
  bool passed = true;
  Json list = Json::array();
  for (const CheckResult& c : checks) {
    passed = passed && c.passed;
    list.push_back(ToJson(c));
    *ctx.out << (c.passed ? "PASS " : "FAIL ") << c.name
             << " observed=" << FormatNumber(c.observed)
             << " limit=" << FormatNumber(c.limit);
    if (!c.detail.empty()) *ctx.out << " (" << c.detail << ")";
    *ctx.out << "\n";
  }
  Json doc = Envelope(ctx);
  doc["suite"] = suite;
  doc["corrupted"] = corrupt;
  doc["passed"] = passed;
  doc["checks"] = std::move(list);
  Emit(ctx, "verify_" + suite + (corrupt ? "_corrupted" : "") + ".json",
       Dump(doc));
  *ctx.out << suite << ": " << (passed ? "passed" : "FAILED") << "\n";
  return passed ? kExitOk : kExitVerificationFailed;
}

struct SweepRow {
  std::string value;
  int trial = 0;
  std::uint64_t seed = 0;
  int rounds = 0;
  std::optional<double> upsilon;
  MisclassificationResult miss;
  std::size_t seeds = 0;
  std::int64_t words = 0;
  double word_bound = 0.0;
};

double Median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

int CmdSweep(const Context& ctx, const std::string& axis_spec) {
  const auto eq = axis_spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == axis_spec.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "axis must look like name=v1,v2,... (got '" + axis_spec + "')");
  }
  std::string axis = axis_spec.substr(0, eq);
  if (axis == "T") axis = "t_override";
  if (axis != "cross_swaps" && axis != "t_override" && axis != "n" &&
      axis != "c_t") {
    Fail(ErrorCode::kInvalidArgument,
         "sweep axis must be cross_swaps, T, n or c_t (got '" + axis + "')");
  }
  std::vector<std::string> values;
  std::stringstream list(axis_spec.substr(eq + 1));
  for (std::string v; std::getline(list, v, ',');) {
    if (v.empty()) Fail(ErrorCode::kInvalidArgument, "empty axis value");
    values.push_back(v);
  }

  std::ostringstream csv;
  csv << "axis,value,trial,seed,rounds,upsilon,misclassification,"
         "lenient_misclassification,unlabeled,seeds,words,word_bound\n";
  for (const std::string& value : values) {
    ExperimentConfig cfg = ctx.cfg;
    try {
      SetConfigValue(cfg, axis, value);
    } catch (const Error& e) {
      Fail(ErrorCode::kInvalidArgument, e.what());
    }
    ValidateExperiment(cfg);
    ClusteredGraph cg = GenerateFromConfig(cfg);
    const Instance inst =
        PrepareInstance(std::move(cg.graph), std::move(cg.partition), cfg);
    std::vector<SweepRow> rows(cfg.trials);
    ParallelFor(cfg.trials, ctx.jobs, [&](std::int64_t t) {
      SweepRow& row = rows[t];
      row.value = value;
      row.trial = static_cast<int>(t);
      row.seed = TrialSeed(cfg.master_seed, row.trial);
      const RunTrace trace = RunProtocol(
          inst.graph, ProtocolFor(cfg, inst.graph, row.seed), inst.rounds);
      row.rounds = trace.rounds;
      if (inst.gap) row.upsilon = inst.gap->upsilon;
      row.miss = Misclassification(trace.labels, trace.labeled, inst.planted);
      row.seeds = trace.seeds.size();
      row.words = trace.words;
      row.word_bound = static_cast<double>(trace.rounds) *
                       inst.graph.num_nodes() * trace.seeding_trials;
    });
    std::vector<double> fractions;
    for (const SweepRow& row : rows) {
      fractions.push_back(row.miss.fraction);
      csv << axis << ',' << row.value << ',' << row.trial << ',' << row.seed
          << ',' << row.rounds << ','
          << (row.upsilon ? FormatNumber(*row.upsilon) : "") << ','
          << FormatNumber(row.miss.fraction) << ','
          << FormatNumber(row.miss.lenient_fraction) << ','
          << row.miss.unlabeled << ',' << row.seeds << ',' << row.words << ','
          << FormatNumber(row.word_bound) << '\n';
    }
    *ctx.out << axis << " = " << value << ": T = " << inst.rounds
             << ", median misclassification = "
             << FormatNumber(Median(fractions)) << "\n";
  }
  Emit(ctx, "sweep_" + axis + ".csv", csv.str());
  return kExitOk;
}

std::string FlagName(const std::string& key) {
  std::string flag = key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  if (key == "output_dir") return "-o,--out,--" + flag;
  return "--" + flag;
}

}  // namespace

const std::vector<std::string>& VerifySuites() {
  static const std::vector<std::string> suites = {
      "lemma1-exact", "lemma1-mc",    "projection", "eq4-domination",
      "cheeger",      "sparse-dense", "lemma3",     "lemma5",
      "coverage-probability"};
  return suites;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Simulator and verifier for load-balancing graph clustering",
               "loadcluster"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::vector<std::string> overrides;
  int jobs = 1;
  app.add_option("--config", config_file, "Config file (key = value lines)");
  app.add_option("--set", overrides, "Override one config key: key=value");
  app.add_option("--jobs", jobs, "Worker threads for independent trials")
      ->check(CLI::PositiveNumber);
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  const ExperimentConfig defaults;
  for (const std::string& key : ConfigKeys()) {
    flag_options[key] = app.add_option(
        FlagName(key), flag_values[key],
        "Config key " + key + " (default " + GetConfigValue(defaults, key) +
            ")");
  }

  GraphInput input;
  auto add_graph_options = [&](CLI::App* sub) {
    sub->add_option("--graph", input.graph_file, "Edge-list file");
    sub->add_option("--partition", input.partition_file, "Partition file");
  };
  CLI::App* generate =
      app.add_subcommand("generate", "Write a planted clustered graph");
  CLI::App* spectra =
      app.add_subcommand("spectra", "Spectrum, gap report and cluster basis");
  add_graph_options(spectra);
  CLI::App* run = app.add_subcommand("run", "Run the clustering protocol");
  add_graph_options(run);
  std::string replay;
  run->add_option("--replay", replay, "Matching trace to replay");
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  add_graph_options(verify);
  std::string suite;
  bool corrupt = false;
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_flag("--corrupt", corrupt,
                   "Perturb one sparse suffix first (negative control)");
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  std::string axis;
  sweep->add_option("--axis", axis, "name=v1,v2,... over cross_swaps, T, n, c_t")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Context ctx;
  ctx.jobs = jobs;
  ctx.out = &out;
  try {
    if (!config_file.empty()) ctx.cfg = ParseConfig(ReadFile(config_file));
    for (const std::string& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) {
        Fail(ErrorCode::kParse, "--set expects key=value, got '" + o + "'");
      }
      SetConfigValue(ctx.cfg, o.substr(0, eq), o.substr(eq + 1));
    }
    for (const std::string& key : ConfigKeys()) {
      if (flag_options[key]->count() > 0) {
        SetConfigValue(ctx.cfg, key, flag_values[key]);
      }
    }
    ValidateExperiment(ctx.cfg);

    if (generate->parsed()) {
      ctx.command = "generate";
      return CmdGenerate(ctx);
    }
    if (spectra->parsed()) {
      ctx.command = "spectra";
      return CmdSpectra(ctx, input);
    }
    if (run->parsed()) {
      ctx.command = "run";
      return CmdRun(ctx, input, replay);
    }
    if (verify->parsed()) {
      ctx.command = "verify";
      return CmdVerify(ctx, suite, input, corrupt, err);
    }
    ctx.command = "sweep";
    return CmdSweep(ctx, axis);
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace loadcluster
