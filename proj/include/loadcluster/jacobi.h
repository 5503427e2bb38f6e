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

#ifndef LOADCLUSTER_JACOBI_H_
#define LOADCLUSTER_JACOBI_H_

#include <vector>

#include "loadcluster/dense_matrix.h"

namespace loadcluster {

struct JacobiOptions {
  int max_sweeps = 30;
  // Stop once sqrt(sum_{i != j} a_ij^2) drops to this value.
  double off_diagonal_tolerance = 1e-12;
  // Inputs with max |a_ij - a_ji| above this are rejected.
  double symmetry_tolerance = 1e-12;
};

struct SymmetricEigen {
  // Descending. Equal eigenvalues keep the solver's diagonal order.
  std::vector<double> values;
  // Row i is the unit eigenvector for values[i].
  Matrix vectors;
  int sweeps = 0;
  double off_diagonal_norm = 0.0;
};

// Cyclic Jacobi rotations on a dense symmetric matrix. Throws
// Error(kInvalidArgument) for non-square or non-symmetric input and
// Error(kNotConverged) if the sweep budget runs out.
SymmetricEigen JacobiEigen(const Matrix& a, const JacobiOptions& options = {});

// Smallest eigenvalue of a symmetric matrix, via JacobiEigen.
double MinEigenvalue(const Matrix& a, const JacobiOptions& options = {});

}  // namespace loadcluster

#endif  // LOADCLUSTER_JACOBI_H_
