// clvc/norm.cpp

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

#include "clvc/norm.hpp"

#include <cmath>
#include <string>

#include "clvc/errors.hpp"

namespace clvc {

NormStats NormStats::identity(std::size_t dim) {
  NormStats s;
  s.mean.assign(dim, 0.0);
  s.stdev.assign(dim, 1.0);
  return s;
}

NormStats NormStats::fit(const Matrix &frames) {
  if (frames.rows() == 0) throw DataError("NormStats::fit: no frames");
  const std::size_t d = frames.cols();
  NormStats s;
  s.mean.assign(d, 0.0);
  s.stdev.assign(d, 0.0);
  const double inv_n = 1.0 / static_cast<double>(frames.rows());
  for (std::size_t i = 0; i < frames.rows(); ++i) {
    auto r = frames.row(i);
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += r[j];
  }
  for (std::size_t j = 0; j < d; ++j) s.mean[j] *= inv_n;
  for (std::size_t i = 0; i < frames.rows(); ++i) {
    auto r = frames.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = r[j] - s.mean[j];
      s.stdev[j] += dv * dv;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    s.stdev[j] = std::max(std::sqrt(s.stdev[j] * inv_n), kStdFloor);
  }
  return s;
}

Matrix NormStats::apply(const Matrix &frames) const {
  if (frames.cols() != dim()) {
    throw ShapeError("NormStats::apply: dim " + std::to_string(frames.cols()) +
                     " vs stats dim " + std::to_string(dim()));
  }
  Matrix out(frames.rows(), frames.cols());
  for (std::size_t i = 0; i < frames.rows(); ++i) {
    auto r = frames.row(i);
    auto o = out.row(i);
    for (std::size_t j = 0; j < dim(); ++j) o[j] = (r[j] - mean[j]) / stdev[j];
  }
  return out;
}

Matrix NormStats::invert(const Matrix &normed) const {
  if (normed.cols() != dim()) {
    throw ShapeError("NormStats::invert: dim " + std::to_string(normed.cols()) +
                     " vs stats dim " + std::to_string(dim()));
  }
  Matrix out(normed.rows(), normed.cols());
  for (std::size_t i = 0; i < normed.rows(); ++i) {
    auto r = normed.row(i);
    auto o = out.row(i);
    for (std::size_t j = 0; j < dim(); ++j) o[j] = r[j] * stdev[j] + mean[j];
  }
  return out;
}

}  // namespace clvc
