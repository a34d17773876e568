// clvc/model_io.hpp

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

#ifndef CLVC_MODEL_IO_HPP_
#define CLVC_MODEL_IO_HPP_

#include <cstdint>
#include <filesystem>

#include "clvc/dae.hpp"
#include "clvc/gmm.hpp"
#include "clvc/mapper.hpp"
#include "clvc/pipeline.hpp"

namespace clvc {

// CVCM model container: magic "CVCM", version u16, model-kind fourcc u32,
// payload size u64, payload, trailing FNV-1a 64 hash of the payload. One
// model per file. The mapper payload embeds the content hash of the encoder
// it was trained against, so a mismatched DAE/mapper pair is rejected at
// load time instead of silently corrupting conversions.

constexpr std::uint32_t kKindDae = 0x4d454144;     // "DAEM"
constexpr std::uint32_t kKindMapper = 0x4d50414d;  // "MAPM"
constexpr std::uint32_t kKindGmm = 0x4d4d4d47;     // "GMMM"

std::uint64_t fnv1a64(const void *data, std::size_t size);

// Hash of the model's serialized payload (stable across save/load cycles).
std::uint64_t dae_content_hash(const DaeModel &model);

void save_dae(const DaeModel &model, const std::filesystem::path &path);
DaeModel load_dae(const std::filesystem::path &path);

// The mapper artifact also carries the target prosody profile and the hash
// of its training-time encoder, making `train-dnn` a one-artifact command.
struct MapperArtifact {
  MapperModel mapper;
  SpeakerProfile profile;
  std::uint64_t dae_hash = 0;
};

void save_mapper(const MapperArtifact &artifact, const std::filesystem::path &path);
MapperArtifact load_mapper(const std::filesystem::path &path);

struct GmmArtifact {
  GmmModel gmm;
  SpeakerProfile profile;
};

void save_gmm(const GmmArtifact &artifact, const std::filesystem::path &path);
GmmArtifact load_gmm(const std::filesystem::path &path);

// Assembles a runnable system from model files. The proposed loader verifies
// mapper.dae_hash against the encoder file and throws DataError on mismatch.
VcSystem load_system_proposed(const std::filesystem::path &dae_path,
                              const std::filesystem::path &mapper_path);
VcSystem load_system_baseline(const std::filesystem::path &gmm_path);

}  // namespace clvc

#endif  // CLVC_MODEL_IO_HPP_
