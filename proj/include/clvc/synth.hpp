// clvc/synth.hpp

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

#ifndef CLVC_SYNTH_HPP_
#define CLVC_SYNTH_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clvc/corpus.hpp"
#include "clvc/matrix.hpp"

namespace clvc {

// Synthetic multi-speaker corpus generator. Utterance content (phone
// sequence, jitter, frame count, voicing mask) is a pure function of the
// master seed and the utterance index, shared by every speaker; a speaker is
// an affine view of that content (warp * x + offset) plus observation noise
// and a private F0 register. Rendering the same utterance index under two
// specs therefore yields exactly frame-aligned parallel data, which is what
// makes listener-free evaluation possible.

struct SyntheticSpeakerSpec {
  std::string speaker_id;
  Matrix warp;                 // M x M, condition number must stay < 100
  std::vector<double> offset;  // M
  double base_f0 = 150.0;      // Hz
  double f0_range = 30.0;      // Hz, peak to peak around base_f0
  double noise_sigma = 0.0;    // observation noise, >= 0
  std::uint64_t seed = 0;
};

struct CorpusConfig {
  std::size_t phones = 32;                 // P shared phone prototypes
  std::size_t utterances_per_speaker = 50;
  std::size_t train_per_speaker = 40;      // remainder tagged "test" (125/30 scaled)
  std::size_t min_frames = 80;
  std::size_t max_frames = 120;
  std::size_t feature_dim = 40;            // M
  std::size_t ap_bands = 5;                // A
  double proto_scale = 2.0;
  double jitter_sigma = 0.5;
  double unvoiced_fraction = 0.2;
  double frame_shift = 0.005;
  double frame_length = 0.025;
  std::uint64_t master_seed = 1;
};

struct SyntheticCorpus {
  std::vector<FeatureUtterance> utterances;            // speaker-major order
  std::vector<ManifestEntry> manifest;                 // parallel to utterances
  std::map<std::string, std::vector<int>> phone_labels;  // by utterance_id
};

// Default Table-I-like speaker bank: `dae_speakers` ids "dae1".. for encoder
// training and `vc_speakers` ids "vc1".. for conversion experiments, with
// alternating low/high F0 registers. Warps are near-identity and offsets are
// drawn mostly orthogonal to the shared content subspace of `config`.
std::vector<SyntheticSpeakerSpec> default_speaker_specs(std::size_t dae_speakers,
                                                        std::size_t vc_speakers,
                                                        double noise_sigma,
                                                        const CorpusConfig &config);

// Renders utterance `index` under one speaker. Content is derived from
// config.master_seed only. Throws DataError on a degenerate warp.
FeatureUtterance render_utterance(const SyntheticSpeakerSpec &spec, std::size_t index,
                                  const CorpusConfig &config);

// Per-frame phone ids of utterance `index` (shared across speakers).
std::vector<int> utterance_phones(std::size_t index, const CorpusConfig &config);

// Full corpus: every speaker renders every utterance index. Pure function of
// specs + config.
SyntheticCorpus generate_corpus(const std::vector<SyntheticSpeakerSpec> &specs,
                                const CorpusConfig &config);

// The shared M x (M/2) orthonormal content basis used by the generator;
// exposed so tests and the default speaker bank can reason about it.
Matrix content_basis(const CorpusConfig &config);

}  // namespace clvc

#endif  // CLVC_SYNTH_HPP_
