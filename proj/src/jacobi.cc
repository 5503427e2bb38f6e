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

#include "loadcluster/jacobi.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "loadcluster/error.h"

namespace loadcluster {
namespace {

double OffDiagonalNorm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    for (std::size_t j = i + 1; j < a.cols(); ++j) sum += row[j] * row[j];
  }
  return std::sqrt(2.0 * sum);
}

// Annihilates a(p, q). The matrix is kept fully symmetric: rows p and q are
// updated contiguously and then mirrored into columns p and q.
void Rotate(Matrix& a, Matrix& vt, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  auto row_p = a.row(p);
  auto row_q = a.row(q);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = row_p[k];
    const double akq = row_q[k];
    row_p[k] = akp - s * (akq + tau * akp);
    row_q[k] = akq + s * (akp - tau * akq);
  }
  row_p[p] -= t * apq;
  row_q[q] += t * apq;
  row_p[q] = 0.0;
  row_q[p] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    a(k, p) = row_p[k];
    a(k, q) = row_q[k];
  }

  auto vp = vt.row(p);
  auto vq = vt.row(q);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = vp[k];
    const double y = vq[k];
    vp[k] = x - s * (y + tau * x);
    vq[k] = y + s * (x - tau * y);
  }
}

}  // namespace

SymmetricEigen JacobiEigen(const Matrix& input, const JacobiOptions& options) {
  if (!input.square()) {
    Fail(ErrorCode::kInvalidArgument, "eigendecomposition needs a square matrix");
  }
  const double asym = input.AsymmetryNorm();
  if (asym > options.symmetry_tolerance) {
    Fail(ErrorCode::kInvalidArgument,
         "matrix is not symmetric (max |a_ij - a_ji| = " +
             std::to_string(asym) + ")");
  }
  const std::size_t n = input.rows();
  Matrix a = input;
  // Symmetrize exactly so both triangles carry the same value.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mean = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = mean;
      a(j, i) = mean;
    }
  }
  Matrix vt = Matrix::Identity(n);

  int sweep = 0;
  double off = OffDiagonalNorm(a);
  while (off > options.off_diagonal_tolerance) {
    if (sweep == options.max_sweeps) {
      Fail(ErrorCode::kNotConverged,
           "Jacobi did not converge in " + std::to_string(options.max_sweeps) +
               " sweeps (off-diagonal norm " + std::to_string(off) + ")");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // After a few sweeps, drop elements that are below the rounding
        // level of both diagonal entries.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        Rotate(a, vt, p, q);
      }
    }
    off = OffDiagonalNorm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen result;
  result.values.resize(n);
  result.vectors = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    result.values[r] = a(order[r], order[r]);
    auto src = vt.row(order[r]);
    std::copy(src.begin(), src.end(), result.vectors.row(r).begin());
  }
  result.sweeps = sweep;
  result.off_diagonal_norm = off;
  return result;
}

double MinEigenvalue(const Matrix& a, const JacobiOptions& options) {
  const SymmetricEigen eig = JacobiEigen(a, options);
  return eig.values.empty() ? 0.0 : eig.values.back();
}

}  // namespace loadcluster
