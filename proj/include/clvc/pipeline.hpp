// clvc/pipeline.hpp

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

#ifndef CLVC_PIPELINE_HPP_
#define CLVC_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "clvc/corpus.hpp"
#include "clvc/dae.hpp"
#include "clvc/gmm.hpp"
#include "clvc/mapper.hpp"
#include "clvc/prosody.hpp"

namespace clvc {

// End-to-end orchestration. Both systems are many-to-one: training sees only
// the target speaker (plus the separately trained multi-speaker encoder for
// the proposed system), never the source.

enum class SystemKind : std::uint8_t { kProposed = 0, kGmmBaseline = 1 };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string &name);

struct VcSystem {
  SystemKind kind = SystemKind::kProposed;
  std::optional<DaeModel> dae;        // proposed
  std::optional<MapperModel> mapper;  // proposed
  std::optional<GmmModel> gmm;        // baseline
  SpeakerProfile target_profile;

  void validate() const;  // kind/member consistency -> DataError
};

// Bottleneck extraction over the target corpus, then mapper training on the
// aligned (bottleneck, frame) pairs; the target F0 profile is averaged over
// all training utterances. The corpus must be single-speaker. When given,
// `loss_trace` receives the mapper's per-epoch training MSE.
VcSystem train_proposed(const DaeModel &dae,
                        const std::vector<FeatureUtterance> &target_corpus,
                        const MapperConfig &config = {},
                        std::vector<double> *loss_trace = nullptr);

// GMM tokenizer fit on pooled target frames (128 components by default).
// When given, `llh_trace` receives the EM log-likelihood trace.
VcSystem train_baseline(const std::vector<FeatureUtterance> &target_corpus,
                        std::size_t components = 128, const GmmConfig &config = {},
                        std::vector<double> *llh_trace = nullptr);

// Spectral conversion (encode+map or tokenize), F0 transform to the target
// register, aperiodicity passthrough. Frame count, frame geometry and AP are
// invariant; the result carries the target speaker id.
FeatureUtterance convert(const VcSystem &system, const FeatureUtterance &source);

}  // namespace clvc

#endif  // CLVC_PIPELINE_HPP_
