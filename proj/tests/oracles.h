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

#ifndef LOADCLUSTER_TESTS_ORACLES_H_
#define LOADCLUSTER_TESTS_ORACLES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "loadcluster/dense_matrix.h"
#include "loadcluster/graph.h"
#include "loadcluster/matching.h"
#include "loadcluster/protocol.h"

// Reference implementations written independently of the library code they
// check: different algorithms, no shared helpers beyond the data types.
namespace loadcluster::oracle {

// Eigen's self-adjoint solver, eigenvalues sorted descending.
std::vector<double> EigenvaluesDescending(const Matrix& m);

// Random-walk matrix straight from the edge list: A[u][v] counts edges,
// self-loop weight on the diagonal, all divided by the given degree.
Matrix WalkMatrix(const Graph& g, int degree);

// E[M] by recursing over nodes and their (coin, choice) pairs.
Matrix ExpectedMatching(const Graph& g, int slots_per_node_or_zero);

// rho(k) over all k^n labelings with every block nonempty and of positive
// volume. Volume recomputed from the edge list; the degree-sum form also
// counts self-loop weight, so lifted graphs use their lifted degree.
double RhoByLabelings(const Graph& g, int k, bool degree_sum);

// Number of connected components by union-find over the edge list.
int ComponentsByUnionFind(const Graph& g);

// Misclassification by trying every injective map (std::next_permutation
// over padded cluster lists). Unlabeled nodes count as misclassified.
std::int64_t MisclassificationByPermutation(std::span<const SeedId> labels,
                                            std::span<const char> labeled,
                                            const Partition& planted);

}  // namespace loadcluster::oracle

#endif  // LOADCLUSTER_TESTS_ORACLES_H_
