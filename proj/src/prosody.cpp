// clvc/prosody.cpp

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

#include "clvc/prosody.hpp"

#include "clvc/errors.hpp"

namespace clvc {

double mean_voiced_f0(const std::vector<F0Track> &tracks) {
  double sum = 0.0;
  std::size_t voiced = 0;
  for (const F0Track &t : tracks) {
    for (double v : t.values) {
      if (v > 0.0) {
        sum += v;
        ++voiced;
      }
    }
  }
  if (voiced == 0) throw ProsodyError("mean_voiced_f0: no voiced frames");
  return sum / static_cast<double>(voiced);
}

F0Track transform_f0(const F0Track &source, double target_mean_f0) {
  if (!(target_mean_f0 > 0.0)) {
    throw ProsodyError("transform_f0: target mean F0 must be positive");
  }
  const double source_mean = mean_voiced_f0({source});  // throws if all unvoiced
  const double factor = target_mean_f0 / source_mean;
  F0Track out;
  out.frame_shift = source.frame_shift;
  out.values.reserve(source.values.size());
  for (double v : source.values) {
    out.values.push_back(v > 0.0 ? v * factor : 0.0);
  }
  return out;
}

Matrix pass_aperiodicity(const Matrix &source_ap) { return source_ap; }

}  // namespace clvc
