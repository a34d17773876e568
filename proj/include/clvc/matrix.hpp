// clvc/matrix.hpp

// Copyright 2026  CLVC Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CLVC_MATRIX_HPP_
#define CLVC_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace clvc {

// Dense row-major matrix of 64-bit reals. All numerics in the toolkit are
// double precision; gradient checking at 1e-5 tolerance is unreliable in
// single precision.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  double *data() { return data_.data(); }
  const double *data() const { return data_.data(); }

  bool all_finite() const;

  bool operator==(const Matrix &other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// C = A * B,  A: n x k, B: k x m.
Matrix matmul(const Matrix &a, const Matrix &b);

// C = A * B^T,  A: n x k, B: m x k.  Row-dot-row, the hot kernel of forward
// passes (X * W^T).
Matrix matmul_nt(const Matrix &a, const Matrix &b);

// C = A^T * B,  A: n x r, B: n x c.  Used for gradient accumulation.
Matrix matmul_tn(const Matrix &a, const Matrix &b);

Matrix transpose(const Matrix &a);

// Adds v to every row of a in place.
void add_row_inplace(Matrix &a, std::span<const double> v);

std::vector<double> col_sums(const Matrix &a);

// Rows of src selected by idx, in order.
Matrix gather_rows(const Matrix &src, std::span<const std::size_t> idx);

// Stacks blocks vertically; all blocks must share a column count.
Matrix vstack(std::span<const Matrix> blocks);

double dot(std::span<const double> a, std::span<const double> b);

// Solves a * x = b in place by Gaussian elimination with partial pivoting.
// Throws DataError when a pivot collapses (singular system).
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

// 2-norm condition number estimate via power iteration on A^T A and inverse
// iteration through an LU solve. Deterministic; adequate as a degeneracy
// guard, not a reference implementation.
double condition_estimate(const Matrix &a);

}  // namespace clvc

#endif  // CLVC_MATRIX_HPP_
