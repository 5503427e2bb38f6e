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

#ifndef LOADCLUSTER_CONFIG_H_
#define LOADCLUSTER_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loadcluster/graph.h"
#include "loadcluster/matching.h"
#include "loadcluster/protocol.h"

namespace loadcluster {

// Every knob an experiment uses. The textual form is one `key = value` per
// line; `#` starts a comment. Defaults describe the two-cluster fixture
// (500 nodes, degree 16, 5 cross swaps).
struct ExperimentConfig {
  // Generator.
  NodeId n = 500;
  int k = 2;
  int d = 16;
  int cross_swaps = 5;
  // Protocol.
  double beta = 0.4;
  double c_t = 5.0;
  // Unset means "derive from the spectral gap".
  std::optional<int> t_override;
  // "regular" or "almost-regular".
  std::string variant = "regular";
  // Lift degree for the almost-regular variant; 0 means the max degree.
  int lift_degree = 0;
  // Analysis.
  double c_good = 1.0;
  double ratio_cap = 10.0;
  int runs = 100;
  int trials = 10;
  // Provenance.
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";
  VolumeConvention volume_convention = VolumeConvention::kIncidentEdges;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Keys in the order FormatConfig writes them.
const std::vector<std::string>& ConfigKeys();

// Sets one field from text. Throws Error(kParse) for an unknown key or a
// malformed value.
void SetConfigValue(ExperimentConfig& cfg, std::string_view key,
                    std::string_view value);
std::string GetConfigValue(const ExperimentConfig& cfg, std::string_view key);

// Doubles are written in shortest round-trip form, so parsing the output
// reproduces the config exactly.
std::string FormatConfig(const ExperimentConfig& cfg);
// Starts from the defaults; keys may appear in any order.
ExperimentConfig ParseConfig(std::string_view text);

// Throws Error(kInvalidArgument) for out-of-range values.
void ValidateExperiment(const ExperimentConfig& cfg);

// The variant for graph g: the lift degree resolves to g's max degree when 0.
ProtocolVariant VariantFor(const ExperimentConfig& cfg, const Graph& g);
ProtocolConfig ProtocolFor(const ExperimentConfig& cfg, const Graph& g,
                           std::uint64_t seed);

}  // namespace loadcluster

#endif  // LOADCLUSTER_CONFIG_H_
