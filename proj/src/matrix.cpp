// clvc/matrix.cpp

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

#include "clvc/matrix.hpp"

#include <cmath>
#include <string>

#include "clvc/errors.hpp"

namespace clvc {

namespace {

std::string dims(const Matrix &m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix matmul(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + dims(a) + " * " + dims(b));
  }
  Matrix c(a.rows(), b.cols());
  // i-k-j order keeps both b and c rows contiguous in the inner loop.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double av = a(i, k);
      if (av == 0.0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += av * brow[j];
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.cols()) {
    throw ShapeError("matmul_nt: " + dims(a) + " * " + dims(b) + "^T");
  }
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto arow = a.row(i);
    auto crow = c.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) crow[j] = dot(arow, b.row(j));
  }
  return c;
}

Matrix matmul_tn(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows()) {
    throw ShapeError("matmul_tn: " + dims(a) + "^T * " + dims(b));
  }
  Matrix c(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto arow = a.row(i);
    auto brow = b.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      auto crow = c.row(p);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += av * brow[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix &a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

void add_row_inplace(Matrix &a, std::span<const double> v) {
  if (v.size() != a.cols()) {
    throw ShapeError("add_row_inplace: vector length " + std::to_string(v.size()) +
                     " vs " + dims(a));
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] += v[j];
  }
}

std::vector<double> col_sums(const Matrix &a) {
  std::vector<double> s(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) s[j] += r[j];
  }
  return s;
}

Matrix gather_rows(const Matrix &src, std::span<const std::size_t> idx) {
  Matrix out(idx.size(), src.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto s = src.row(idx[i]);
    auto d = out.row(i);
    for (std::size_t j = 0; j < src.cols(); ++j) d[j] = s[j];
  }
  return out;
}

Matrix vstack(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const Matrix &b : blocks) {
    if (b.cols() != cols) {
      throw ShapeError("vstack: column mismatch " + std::to_string(b.cols()) + " vs " +
                       std::to_string(cols));
    }
    rows += b.rows();
  }
  Matrix out(rows, cols);
  std::size_t at = 0;
  for (const Matrix &b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i, ++at) {
      auto s = b.row(i);
      auto d = out.row(at);
      for (std::size_t j = 0; j < cols; ++j) d[j] = s[j];
    }
  }
  return out;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) {
    throw ShapeError("solve_linear: " + dims(a) + ", rhs " + std::to_string(b.size()));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (!(best > 1e-300)) throw DataError("solve_linear: singular matrix");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    const double inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) * inv;
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t ii = n; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

double condition_estimate(const Matrix &a) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) {
    throw ShapeError("condition_estimate: square matrix required, got " + dims(a));
  }
  auto normalize = [](std::vector<double> &v) {
    double s = std::sqrt(dot(v, v));
    if (s == 0.0) return 0.0;
    for (double &x : v) x /= s;
    return s;
  };
  auto apply = [&](const Matrix &m, const std::vector<double> &v) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i] = dot(m.row(i), v);
    return out;
  };
  const Matrix at = transpose(a);

  // sigma_max^2 via power iteration on A^T A.
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i);
  normalize(v);
  double smax2 = 0.0;
  for (int it = 0; it < 50; ++it) {
    v = apply(at, apply(a, v));
    smax2 = normalize(v);
    if (smax2 == 0.0) return std::numeric_limits<double>::infinity();
  }

  // sigma_min^2 via inverse iteration: solve (A^T A) w = v repeatedly.
  Matrix ata = matmul_nt(at, at);  // A^T * (A^T)^T = A^T A
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 - 0.01 * static_cast<double>(i);
  normalize(w);
  double growth = 0.0;
  try {
    for (int it = 0; it < 50; ++it) {
      w = solve_linear(ata, w);
      growth = normalize(w);
    }
  } catch (const DataError &) {
    return std::numeric_limits<double>::infinity();
  }
  if (growth <= 0.0) return std::numeric_limits<double>::infinity();
  const double smin2 = 1.0 / growth;
  return std::sqrt(smax2 / smin2);
}

}  // namespace clvc
