// clvc/pipeline.cpp

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

#include "clvc/pipeline.hpp"

#include "clvc/errors.hpp"

namespace clvc {

std::string to_string(SystemKind kind) {
  return kind == SystemKind::kProposed ? "proposed" : "gmm";
}

SystemKind system_kind_from_string(const std::string &name) {
  if (name == "proposed") return SystemKind::kProposed;
  if (name == "gmm") return SystemKind::kGmmBaseline;
  throw ConfigError("unknown system kind '" + name + "' (expected proposed|gmm)");
}

void VcSystem::validate() const {
  if (kind == SystemKind::kProposed) {
    if (!dae || !mapper) throw DataError("proposed system requires dae + mapper");
  } else {
    if (!gmm) throw DataError("gmm system requires a fitted tokenizer");
  }
  if (!(target_profile.mean_voiced_f0 > 0.0)) {
    throw DataError("system profile has no voiced-F0 average");
  }
}

namespace {

// Pools frames in utterance order and computes the target prosody profile.
// Enforces the single-speaker precondition shared by both trainers.
struct TargetData {
  Matrix frames;
  SpeakerProfile profile;
};

TargetData collect_target(const std::vector<FeatureUtterance> &corpus) {
  if (corpus.empty()) throw DataError("target corpus is empty");
  const std::string &speaker = corpus.front().speaker_id;
  std::vector<Matrix> blocks;
  std::vector<F0Track> tracks;
  for (const FeatureUtterance &utt : corpus) {
    if (utt.speaker_id != speaker) {
      throw DataError("target corpus mixes speakers '" + speaker + "' and '" +
                      utt.speaker_id + "'");
    }
    blocks.push_back(utt.frames);
    tracks.push_back(utt.f0);
  }
  TargetData data;
  data.frames = vstack(blocks);
  data.profile.speaker_id = speaker;
  data.profile.mean_voiced_f0 = mean_voiced_f0(tracks);
  return data;
}

}  // namespace

VcSystem train_proposed(const DaeModel &dae,
                        const std::vector<FeatureUtterance> &target_corpus,
                        const MapperConfig &config, std::vector<double> *loss_trace) {
  TargetData target = collect_target(target_corpus);
  // Bottleneck features are extracted once, up front; the mapper trains on
  // the cached matrix rather than re-encoding per epoch.
  const Matrix bottleneck = dae_encode(dae, target.frames);
  MapperTrainResult trained =
      mapper_train(bottleneck, target.frames, config, target.profile.speaker_id);
  if (loss_trace) *loss_trace = trained.trace;

  VcSystem system;
  system.kind = SystemKind::kProposed;
  system.dae = dae;
  system.mapper = std::move(trained.model);
  system.target_profile = std::move(target.profile);
  system.validate();
  return system;
}

VcSystem train_baseline(const std::vector<FeatureUtterance> &target_corpus,
                        std::size_t components, const GmmConfig &config,
                        std::vector<double> *llh_trace) {
  TargetData target = collect_target(target_corpus);
  GmmFitResult fit =
      gmm_fit(target.frames, components, config, target.profile.speaker_id);
  if (llh_trace) *llh_trace = fit.llh_trace;

  VcSystem system;
  system.kind = SystemKind::kGmmBaseline;
  system.gmm = std::move(fit.model);
  system.target_profile = std::move(target.profile);
  system.validate();
  return system;
}

FeatureUtterance convert(const VcSystem &system, const FeatureUtterance &source) {
  system.validate();
  FeatureUtterance out;
  if (system.kind == SystemKind::kProposed) {
    out.frames = mapper_convert(*system.mapper, dae_encode(*system.dae, source.frames));
  } else {
    out.frames = gmm_tokenize(*system.gmm, source.frames).frames;
  }
  out.f0 = transform_f0(source.f0, system.target_profile.mean_voiced_f0);
  out.ap = pass_aperiodicity(source.ap);
  out.speaker_id = system.target_profile.speaker_id;
  out.utterance_id = source.utterance_id;
  out.frame_shift = source.frame_shift;
  out.frame_length = source.frame_length;
  out.validate();
  return out;
}

}  // namespace clvc
