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

#include "loadcluster/config.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "loadcluster/error.h"

namespace loadcluster {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    Fail(ErrorCode::kParse, "bad value '" + std::string(text) + "' for key " +
                                std::string(key));
  }
  return value;
}

// Shortest text that parses back to exactly x.
std::string FormatDouble(double x) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "n",          "k",           "d",          "cross_swaps",
      "beta",       "c_t",         "t_override", "variant",
      "lift_degree", "c_good",     "ratio_cap",  "runs",
      "trials",     "master_seed", "output_dir", "volume_convention"};
  return keys;
}

void SetConfigValue(ExperimentConfig& cfg, std::string_view key,
                    std::string_view raw) {
  const std::string_view value = Trim(raw);
  if (key == "n") {
    cfg.n = ParseNumber<NodeId>(key, value);
  } else if (key == "k") {
    cfg.k = ParseNumber<int>(key, value);
  } else if (key == "d") {
    cfg.d = ParseNumber<int>(key, value);
  } else if (key == "cross_swaps") {
    cfg.cross_swaps = ParseNumber<int>(key, value);
  } else if (key == "beta") {
    cfg.beta = ParseNumber<double>(key, value);
  } else if (key == "c_t") {
    cfg.c_t = ParseNumber<double>(key, value);
  } else if (key == "t_override") {
    if (value == "none") {
      cfg.t_override.reset();
    } else {
      cfg.t_override = ParseNumber<int>(key, value);
    }
  } else if (key == "variant") {
    if (value != "regular" && value != "almost-regular") {
      Fail(ErrorCode::kParse, "variant must be regular or almost-regular");
    }
    cfg.variant = std::string(value);
  } else if (key == "lift_degree") {
    cfg.lift_degree = ParseNumber<int>(key, value);
  } else if (key == "c_good") {
    cfg.c_good = ParseNumber<double>(key, value);
  } else if (key == "ratio_cap") {
    cfg.ratio_cap = ParseNumber<double>(key, value);
  } else if (key == "runs") {
    cfg.runs = ParseNumber<int>(key, value);
  } else if (key == "trials") {
    cfg.trials = ParseNumber<int>(key, value);
  } else if (key == "master_seed") {
    cfg.master_seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "output_dir") {
    if (value.empty()) Fail(ErrorCode::kParse, "output_dir must not be empty");
    cfg.output_dir = std::string(value);
  } else if (key == "volume_convention") {
    try {
      cfg.volume_convention = ParseVolumeConvention(value);
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, e.what());
    }
  } else {
    Fail(ErrorCode::kParse, "unknown config key " + std::string(key));
  }
}

std::string GetConfigValue(const ExperimentConfig& cfg, std::string_view key) {
  if (key == "n") return std::to_string(cfg.n);
  if (key == "k") return std::to_string(cfg.k);
  if (key == "d") return std::to_string(cfg.d);
  if (key == "cross_swaps") return std::to_string(cfg.cross_swaps);
  if (key == "beta") return FormatDouble(cfg.beta);
  if (key == "c_t") return FormatDouble(cfg.c_t);
  if (key == "t_override") {
    return cfg.t_override ? std::to_string(*cfg.t_override) : "none";
  }
  if (key == "variant") return cfg.variant;
  if (key == "lift_degree") return std::to_string(cfg.lift_degree);
  if (key == "c_good") return FormatDouble(cfg.c_good);
  if (key == "ratio_cap") return FormatDouble(cfg.ratio_cap);
  if (key == "runs") return std::to_string(cfg.runs);
  if (key == "trials") return std::to_string(cfg.trials);
  if (key == "master_seed") return std::to_string(cfg.master_seed);
  if (key == "output_dir") return cfg.output_dir;
  if (key == "volume_convention") {
    return std::string(VolumeConventionName(cfg.volume_convention));
  }
  Fail(ErrorCode::kParse, "unknown config key " + std::string(key));
}

std::string FormatConfig(const ExperimentConfig& cfg) {
  std::string out;
  for (const std::string& key : ConfigKeys()) {
    out += key + " = " + GetConfigValue(cfg, key) + "\n";
  }
  return out;
}

ExperimentConfig ParseConfig(std::string_view text) {
  ExperimentConfig cfg;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      Fail(ErrorCode::kParse,
           "line " + std::to_string(line_no) + ": expected key = value");
    }
    SetConfigValue(cfg, Trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

void ValidateExperiment(const ExperimentConfig& cfg) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) Fail(ErrorCode::kInvalidArgument, what);
  };
  require(cfg.n >= 2, "n must be >= 2");
  require(cfg.k >= 1 && cfg.k <= cfg.n, "k must be in [1, n]");
  require(cfg.d >= 1, "d must be >= 1");
  require(cfg.cross_swaps >= 0, "cross_swaps must be >= 0");
  require(cfg.beta > 0.0 && cfg.beta <= 0.5, "beta must be in (0, 1/2]");
  require(cfg.c_t > 0.0 && std::isfinite(cfg.c_t), "c_t must be positive");
  require(!cfg.t_override || *cfg.t_override >= 0, "t_override must be >= 0");
  require(cfg.lift_degree >= 0, "lift_degree must be >= 0");
  require(cfg.c_good > 0.0, "c_good must be positive");
  require(cfg.ratio_cap > 0.0, "ratio_cap must be positive");
  require(cfg.runs >= 1, "runs must be >= 1");
  require(cfg.trials >= 1, "trials must be >= 1");
}

ProtocolVariant VariantFor(const ExperimentConfig& cfg, const Graph& g) {
  if (cfg.variant == "regular") return ProtocolVariant::Regular();
  const int degree = cfg.lift_degree > 0 ? cfg.lift_degree : g.max_degree();
  return ProtocolVariant::AlmostRegular(degree);
}

ProtocolConfig ProtocolFor(const ExperimentConfig& cfg, const Graph& g,
                           std::uint64_t seed) {
  ProtocolConfig p;
  p.beta = cfg.beta;
  p.c_t = cfg.c_t;
  p.rounds_override = cfg.t_override;
  p.seed = seed;
  p.variant = VariantFor(cfg, g);
  return p;
}

}  // namespace loadcluster
