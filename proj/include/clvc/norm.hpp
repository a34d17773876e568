// clvc/norm.hpp

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

#ifndef CLVC_NORM_HPP_
#define CLVC_NORM_HPP_

#include <cstddef>
#include <vector>

#include "clvc/matrix.hpp"

namespace clvc {

// Per-dimension zero-mean/unit-variance statistics. Standard deviations are
// floored so constant dimensions stay invertible.
struct NormStats {
  static constexpr double kStdFloor = 1e-8;

  std::vector<double> mean;
  std::vector<double> stdev;  // every component >= kStdFloor

  std::size_t dim() const { return mean.size(); }

  static NormStats identity(std::size_t dim);
  static NormStats fit(const Matrix &frames);

  Matrix apply(const Matrix &frames) const;    // (x - mean) / stdev
  Matrix invert(const Matrix &normed) const;   // x * stdev + mean

  bool operator==(const NormStats &) const = default;
};

}  // namespace clvc

#endif  // CLVC_NORM_HPP_
