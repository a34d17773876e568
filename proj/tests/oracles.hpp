// tests/oracles.hpp

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

// Independent reference computations for the test suites. Everything here is
// deliberately written as plain scalar loops (or textbook formulas) with no
// calls into the library paths under test.

#ifndef CLVC_TESTS_ORACLES_HPP_
#define CLVC_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "clvc/matrix.hpp"
#include "clvc/nn.hpp"

namespace oracle {

// Per-element forward pass of one dense layer, scalar loops only.
inline std::vector<double> layer_forward(const std::vector<std::vector<double>> &w,
                                         const std::vector<double> &b,
                                         const std::vector<double> &x, bool sigmoid) {
  std::vector<double> out(w.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < x.size(); ++j) s += w[i][j] * x[j];
    out[i] = sigmoid ? 1.0 / (1.0 + std::exp(-s)) : s;
  }
  return out;
}

inline double mse_loop(const clvc::Matrix &a, const clvc::Matrix &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = a(i, j) - b(i, j);
      s += d * d;
    }
  }
  return s / (static_cast<double>(a.rows()) * static_cast<double>(a.cols()));
}

// Diagonal Gaussian density evaluated the long way (product of univariate
// normals), then logged.
inline double gaussian_logpdf_scalar(const std::vector<double> &x,
                                     const std::vector<double> &mean,
                                     const std::vector<double> &var) {
  long double density = 1.0L;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const long double diff = x[d] - mean[d];
    density *= std::exp(-diff * diff / (2.0L * var[d])) /
               std::sqrt(2.0L * static_cast<long double>(M_PI) * var[d]);
  }
  return static_cast<double>(std::log(density));
}

// Central finite differences of mse(forward(model), target) over every
// parameter; the caller compares against analytic gradients.
inline double finite_difference_worst(const clvc::MlpModel &model,
                                      const clvc::Matrix &batch,
                                      const clvc::Matrix &target,
                                      const clvc::Gradients &analytic, double h) {
  clvc::MlpModel probe = model;
  double worst = 0.0;
  auto loss = [&]() { return clvc::mse(clvc::forward(probe, batch), target); };
  for (std::size_t k = 0; k < probe.layers.size(); ++k) {
    auto check = [&](double *p, double g) {
      const double saved = *p;
      *p = saved + h;
      const double up = loss();
      *p = saved - h;
      const double down = loss();
      *p = saved;
      const double fd = (up - down) / (2.0 * h);
      const double rel =
          std::abs(g - fd) / std::max({std::abs(g), std::abs(fd), 1e-8});
      worst = std::max(worst, rel);
    };
    clvc::Layer &layer = probe.layers[k];
    for (std::size_t i = 0; i < layer.weights.size(); ++i) {
      check(layer.weights.data() + i, analytic.weights[k].data()[i]);
    }
    for (std::size_t i = 0; i < layer.bias.size(); ++i) {
      check(&layer.bias[i], analytic.biases[k][i]);
    }
  }
  return worst;
}

// Solves a small dense system by Gauss-Jordan elimination; test-local so the
// least-squares oracles do not lean on the library solver.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
    }
    std::swap(a[k], a[pivot]);
    std::swap(b[k], b[pivot]);
    const double inv = 1.0 / a[k][k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = a[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Least-squares affine fit y ~ G x + d over paired rows; returns G row by
// row with the intercept appended as the last column.
inline std::vector<std::vector<double>> affine_fit(const clvc::Matrix &x,
                                                   const clvc::Matrix &y) {
  const std::size_t n = x.rows();
  const std::size_t dx = x.cols();
  // Normal equations over the augmented regressor [x; 1].
  std::vector<std::vector<double>> ata(dx + 1, std::vector<double>(dx + 1, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= dx; ++i) {
      const double xi = i < dx ? x(r, i) : 1.0;
      for (std::size_t j = 0; j <= dx; ++j) {
        const double xj = j < dx ? x(r, j) : 1.0;
        ata[i][j] += xi * xj;
      }
    }
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t out = 0; out < y.cols(); ++out) {
    std::vector<double> atb(dx + 1, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i <= dx; ++i) {
        atb[i] += (i < dx ? x(r, i) : 1.0) * y(r, out);
      }
    }
    rows.push_back(solve_dense(ata, atb));
  }
  return rows;
}

}  // namespace oracle

#endif  // CLVC_TESTS_ORACLES_HPP_
