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

#ifndef LOADCLUSTER_FIXTURES_H_
#define LOADCLUSTER_FIXTURES_H_

#include <string>
#include <vector>

#include "loadcluster/graph.h"
#include "loadcluster/matching.h"

namespace loadcluster {

// A small deterministic graph with the protocol variant it runs under:
// regular graphs use the plain protocol, irregular ones the emulation at
// their max degree.
struct Fixture {
  std::string name;
  Graph graph;
  ProtocolVariant variant;

  // The (lifted) regular graph whose random walk the analysis uses.
  Graph WalkGraph() const;
};

Graph PetersenGraph();
// The dim-dimensional hypercube (2^dim nodes, degree dim).
Graph HypercubeGraph(int dim);

// Every fixture with n <= 6 and max degree <= 3.
std::vector<Fixture> SmallFixtures();
// Every fixture with n <= 10: the small set plus larger cycles, K5, the
// cube, the Petersen graph and a planted two-cluster cubic graph.
std::vector<Fixture> BruteForceFixtures();

}  // namespace loadcluster

#endif  // LOADCLUSTER_FIXTURES_H_
