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

#ifndef LOADCLUSTER_GRAPH_IO_H_
#define LOADCLUSTER_GRAPH_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "loadcluster/graph.h"

namespace loadcluster {

// Edge list: a header line "n m", then m lines "u v" with 0-indexed
// endpoints. Writers emit u < v; readers accept either order so that
// malformed input reaches Validate() instead of being rewritten.
std::string FormatEdgeList(const Graph& g);
Graph ParseEdgeList(std::string_view text);

// Partition: one cluster index per line, n lines. k is one more than the
// largest index.
std::string FormatPartition(const Partition& p);
Partition ParsePartition(std::string_view text);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

inline Graph ReadEdgeList(const std::filesystem::path& path) {
  return ParseEdgeList(ReadFile(path));
}
inline Partition ReadPartition(const std::filesystem::path& path) {
  return ParsePartition(ReadFile(path));
}

}  // namespace loadcluster

#endif  // LOADCLUSTER_GRAPH_IO_H_
