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

#include "loadcluster/dense_matrix.h"

#include <algorithm>
#include <cmath>

#include "loadcluster/error.h"

namespace loadcluster {
namespace {

void RequireSameShape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    Fail(ErrorCode::kMismatch, "matrix shape mismatch");
  }
}

}  // namespace

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  RequireSameShape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  RequireSameShape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double scale) {
  for (double& x : data_) x *= scale;
  return *this;
}

double Matrix::AsymmetryNorm() const {
  if (!square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    }
  }
  return worst;
}

double Matrix::MaxAbs() const {
  double worst = 0.0;
  for (double x : data_) worst = std::max(worst, std::abs(x));
  return worst;
}

Matrix Multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) Fail(ErrorCode::kMismatch, "inner dimensions");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      auto b_row = b.row(l);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += ail * b_row[j];
    }
  }
  return out;
}

Matrix Power(const Matrix& a, int p) {
  if (!a.square()) Fail(ErrorCode::kMismatch, "power of a non-square matrix");
  if (p < 0) Fail(ErrorCode::kInvalidArgument, "negative matrix power");
  Matrix out = Matrix::Identity(a.rows());
  for (int i = 0; i < p; ++i) out = Multiply(out, a);
  return out;
}

std::vector<double> Multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) Fail(ErrorCode::kMismatch, "vector length");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = Dot(a.row(i), x);
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  RequireSameShape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

}  // namespace loadcluster
