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

#include "loadcluster/graph_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "loadcluster/error.h"

namespace loadcluster {
namespace {

// Splits into non-empty lines, tolerating CRLF and trailing whitespace.
std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    if (!line.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

template <typename... Ts>
void ParseFields(const std::string& line, std::size_t line_no, Ts&... out) {
  std::istringstream in(line);
  ((in >> out), ...);
  std::string rest;
  if (in.fail() || (in >> rest)) {
    Fail(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                ": expected " + std::to_string(sizeof...(Ts)) +
                                " integer field(s), got '" + line + "'");
  }
}

}  // namespace

std::string FormatEdgeList(const Graph& g) {
  std::ostringstream out;
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) {
    out << std::min(e.u, e.v) << ' ' << std::max(e.u, e.v) << '\n';
  }
  return out.str();
}

Graph ParseEdgeList(std::string_view text) {
  const auto lines = Lines(text);
  if (lines.empty()) Fail(ErrorCode::kParse, "empty edge list");
  long long n = 0;
  long long m = 0;
  ParseFields(lines[0], 1, n, m);
  if (n < 0 || m < 0) Fail(ErrorCode::kParse, "negative header values");
  if (static_cast<long long>(lines.size()) - 1 != m) {
    Fail(ErrorCode::kParse, "header declares " + std::to_string(m) +
                                " edges but " +
                                std::to_string(lines.size() - 1) +
                                " edge lines follow");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    long long u = 0;
    long long v = 0;
    ParseFields(lines[i], i + 1, u, v);
    if (u < 0 || u >= n || v < 0 || v >= n) {
      Fail(ErrorCode::kParse, "line " + std::to_string(i + 1) +
                                  ": endpoint outside [0, " +
                                  std::to_string(n) + ")");
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return Graph(static_cast<NodeId>(n), std::move(edges));
}

std::string FormatPartition(const Partition& p) {
  std::string out;
  for (int c : p.assignment()) {
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

Partition ParsePartition(std::string_view text) {
  const auto lines = Lines(text);
  std::vector<int> assignment;
  assignment.reserve(lines.size());
  int max_index = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    long long c = 0;
    ParseFields(lines[i], i + 1, c);
    if (c < 0) {
      Fail(ErrorCode::kParse,
           "line " + std::to_string(i + 1) + ": negative cluster index");
    }
    assignment.push_back(static_cast<int>(c));
    max_index = std::max(max_index, static_cast<int>(c));
  }
  if (assignment.empty()) Fail(ErrorCode::kParse, "empty partition file");
  return Partition(max_index + 1, std::move(assignment));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) Fail(ErrorCode::kIo, "short write to '" + path.string() + "'");
}

}  // namespace loadcluster
