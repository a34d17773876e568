// clvc/prosody.hpp

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

#ifndef CLVC_PROSODY_HPP_
#define CLVC_PROSODY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "clvc/matrix.hpp"
#include "clvc/norm.hpp"

namespace clvc {

// Per-frame F0 contour in Hz; 0.0 encodes an unvoiced frame.
struct F0Track {
  std::vector<double> values;
  double frame_shift = 0.005;  // seconds

  bool operator==(const F0Track &) const = default;
};

struct SpeakerProfile {
  std::string speaker_id;
  double mean_voiced_f0 = 0.0;  // Hz, over all training utterances
  std::optional<NormStats> norm_stats;
};

// Arithmetic mean over strictly positive frames pooled from all tracks.
// Throws ProsodyError when no voiced frame exists.
double mean_voiced_f0(const std::vector<F0Track> &tracks);

// Scales every voiced frame by target_mean_f0 / mean_voiced_f0(source);
// unvoiced frames stay 0. The source mean is per-utterance, the target mean
// comes from the whole training set. Preserves the voicing mask exactly and
// is idempotent once the source mean equals the target.
F0Track transform_f0(const F0Track &source, double target_mean_f0);

// Aperiodicity is carried through conversion untouched.
Matrix pass_aperiodicity(const Matrix &source_ap);

}  // namespace clvc

#endif  // CLVC_PROSODY_HPP_
