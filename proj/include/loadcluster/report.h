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

#ifndef LOADCLUSTER_REPORT_H_
#define LOADCLUSTER_REPORT_H_

#include <string>

#include "json.hpp"
#include "loadcluster/analysis.h"
#include "loadcluster/check.h"
#include "loadcluster/protocol.h"
#include "loadcluster/spectral.h"

namespace loadcluster {

using Json = nlohmann::ordered_json;

// 12 significant digits.
std::string FormatNumber(double x);
// x rounded to 12 significant digits; non-finite values become null.
Json JsonNumber(double x);

// "index,eigenvalue", 1-based.
std::string SpectrumCsv(const Spectrum& spec);
// "node,alpha,good".
std::string BasisCsv(const ClusterBasis& basis, const GoodNodeResult& good);
// "node,prefix,suffix", one row per state entry.
std::string StatesCsv(const RunTrace& trace);
// "t,distQ,distQ_se,bound,residual".
std::string ConvergenceCsv(const ConvergenceTrace& trace);

Json ToJson(const ProtocolConfig& cfg);
Json ToJson(const GapReport& report);
// {config, rounds, seedingTrials, ids, idCollisions, seeds, wordsExchanged,
//  labels, labeled, unlabeledCount, emptyCount}.
Json ToJson(const RunTrace& trace);
Json ToJson(const MisclassificationResult& result);
Json ToJson(const ClusteringReport& report);
Json ToJson(const CheckResult& check);
Json ToJson(const CoverageProbability& result);
Json ToJson(const ClusterDistanceResult& result);

// Pretty-printed with a trailing newline.
std::string Dump(const Json& doc);

}  // namespace loadcluster

#endif  // LOADCLUSTER_REPORT_H_
