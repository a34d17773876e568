// clvc/model_io.cpp

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

#include "clvc/model_io.hpp"

#include <cstring>

#include "clvc/binio.hpp"
#include "clvc/errors.hpp"

namespace clvc {

namespace {

constexpr char kMagic[4] = {'C', 'V', 'C', 'M'};
constexpr std::uint16_t kVersion = 1;

void put_matrix(BinaryWriter &w, const Matrix &m) {
  w.put_u32(static_cast<std::uint32_t>(m.rows()));
  w.put_u32(static_cast<std::uint32_t>(m.cols()));
  w.put_bytes(m.data(), m.size() * sizeof(double));
}

Matrix get_matrix(BinaryReader &r) {
  const std::uint32_t rows = r.get_u32();
  const std::uint32_t cols = r.get_u32();
  if (static_cast<std::uint64_t>(rows) * cols >
      r.remaining() / sizeof(double)) {
    throw FormatError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " exceeds remaining bytes at offset " +
                      std::to_string(r.offset()));
  }
  Matrix m(rows, cols);
  if (m.size() > 0) r.get_bytes(m.data(), m.size() * sizeof(double));
  return m;
}

void put_layer(BinaryWriter &w, const Layer &l) {
  put_matrix(w, l.weights);
  w.put_f64_vector(l.bias);
  w.put_u8(static_cast<std::uint8_t>(l.activation));
}

Layer get_layer(BinaryReader &r) {
  Layer l;
  l.weights = get_matrix(r);
  l.bias = r.get_f64_vector();
  const std::uint8_t act = r.get_u8();
  if (act > 1) {
    throw FormatError("unknown activation tag " + std::to_string(act) +
                      " at offset " + std::to_string(r.offset()));
  }
  l.activation = static_cast<Activation>(act);
  return l;
}

void put_norm(BinaryWriter &w, const NormStats &n) {
  w.put_f64_vector(n.mean);
  w.put_f64_vector(n.stdev);
}

NormStats get_norm(BinaryReader &r) {
  NormStats n;
  n.mean = r.get_f64_vector();
  n.stdev = r.get_f64_vector();
  if (n.mean.size() != n.stdev.size()) {
    throw FormatError("norm stats length mismatch at offset " +
                      std::to_string(r.offset()));
  }
  return n;
}

void put_profile(BinaryWriter &w, const SpeakerProfile &p) {
  w.put_string(p.speaker_id);
  w.put_f64(p.mean_voiced_f0);
  w.put_u8(p.norm_stats.has_value() ? 1 : 0);
  if (p.norm_stats) put_norm(w, *p.norm_stats);
}

SpeakerProfile get_profile(BinaryReader &r) {
  SpeakerProfile p;
  p.speaker_id = r.get_string();
  p.mean_voiced_f0 = r.get_f64();
  if (r.get_u8() != 0) p.norm_stats = get_norm(r);
  return p;
}

void put_mlp(BinaryWriter &w, const MlpModel &m) {
  w.put_u32(static_cast<std::uint32_t>(m.input_dim));
  w.put_u32(static_cast<std::uint32_t>(m.layers.size()));
  for (const Layer &l : m.layers) put_layer(w, l);
}

MlpModel get_mlp(BinaryReader &r) {
  MlpModel m;
  m.input_dim = r.get_u32();
  const std::uint32_t layers = r.get_u32();
  for (std::uint32_t i = 0; i < layers; ++i) m.layers.push_back(get_layer(r));
  return m;
}

std::vector<std::uint8_t> container(std::uint32_t kind,
                                    std::vector<std::uint8_t> payload) {
  BinaryWriter w;
  w.put_bytes(kMagic, sizeof(kMagic));
  w.put_u16(kVersion);
  w.put_u32(kind);
  w.put_u64(payload.size());
  w.put_bytes(payload.data(), payload.size());
  w.put_u64(fnv1a64(payload.data(), payload.size()));
  return w.take();
}

// Returns the verified payload of a container of the expected kind.
std::vector<std::uint8_t> open_container(const std::filesystem::path &path,
                                         std::uint32_t expected_kind) {
  BinaryReader r(read_file(path));
  char magic[4];
  r.get_bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError(path.string() + ": bad magic at offset 0");
  }
  const std::uint16_t version = r.get_u16();
  if (version != kVersion) {
    throw FormatError(path.string() + ": unsupported version " +
                      std::to_string(version) + " at offset 4");
  }
  const std::uint32_t kind = r.get_u32();
  if (kind != expected_kind) {
    throw FormatError(path.string() + ": wrong model kind at offset 6");
  }
  const std::uint64_t size = r.get_u64();
  if (size != r.remaining() - sizeof(std::uint64_t)) {
    throw FormatError(path.string() + ": payload size mismatch at offset 10");
  }
  std::vector<std::uint8_t> payload(size);
  if (size > 0) r.get_bytes(payload.data(), size);
  const std::uint64_t stored_hash = r.get_u64();
  r.expect_end(path.string());
  if (stored_hash != fnv1a64(payload.data(), payload.size())) {
    throw FormatError(path.string() + ": content hash mismatch");
  }
  return payload;
}

std::vector<std::uint8_t> dae_payload(const DaeModel &model) {
  BinaryWriter w;
  w.put_u32(static_cast<std::uint32_t>(model.feature_dim));
  w.put_u8(model.tied ? 1 : 0);
  w.put_u64(model.seed);
  w.put_u32(static_cast<std::uint32_t>(model.config.hidden_widths.size()));
  for (std::size_t h : model.config.hidden_widths) {
    w.put_u32(static_cast<std::uint32_t>(h));
  }
  w.put_u32(static_cast<std::uint32_t>(model.config.bottleneck));
  w.put_f64(model.config.learning_rate);
  w.put_u32(static_cast<std::uint32_t>(model.config.batch));
  w.put_u32(static_cast<std::uint32_t>(model.config.max_epochs));
  w.put_u32(static_cast<std::uint32_t>(model.config.patience));
  w.put_f64(model.config.validation_fraction);
  put_norm(w, model.norm);
  w.put_u32(static_cast<std::uint32_t>(model.encoder.size()));
  for (const Layer &l : model.encoder) put_layer(w, l);
  // Tied decoder weights are recomputed on load; only biases are stored.
  for (const Layer &l : model.decoder) {
    if (model.tied) {
      w.put_f64_vector(l.bias);
    } else {
      put_layer(w, l);
    }
  }
  return w.take();
}

DaeModel dae_from_payload(BinaryReader r) {
  DaeModel model;
  model.feature_dim = r.get_u32();
  model.tied = r.get_u8() != 0;
  model.seed = r.get_u64();
  const std::uint32_t hidden = r.get_u32();
  model.config.hidden_widths.clear();
  for (std::uint32_t i = 0; i < hidden; ++i) {
    model.config.hidden_widths.push_back(r.get_u32());
  }
  model.config.bottleneck = r.get_u32();
  model.config.learning_rate = r.get_f64();
  model.config.batch = r.get_u32();
  model.config.max_epochs = r.get_u32();
  model.config.patience = r.get_u32();
  model.config.validation_fraction = r.get_f64();
  model.config.tied = model.tied;
  model.norm = get_norm(r);
  const std::uint32_t enc_layers = r.get_u32();
  for (std::uint32_t i = 0; i < enc_layers; ++i) model.encoder.push_back(get_layer(r));
  for (std::uint32_t i = 0; i < enc_layers; ++i) {
    if (model.tied) {
      const Layer &twin = model.encoder[enc_layers - 1 - i];
      Layer l;
      l.weights = transpose(twin.weights);
      l.bias = r.get_f64_vector();
      // Hidden decoder layers are sigmoid, the last one linear.
      l.activation = (i + 1 == enc_layers) ? Activation::kLinear : Activation::kSigmoid;
      model.decoder.push_back(std::move(l));
    } else {
      model.decoder.push_back(get_layer(r));
    }
  }
  r.expect_end("DAE payload");
  model.validate();
  return model;
}

std::vector<std::uint8_t> mapper_payload(const MapperArtifact &artifact) {
  BinaryWriter w;
  w.put_string(artifact.mapper.target_speaker_id);
  w.put_u64(artifact.mapper.config.seed);
  w.put_f64(artifact.mapper.config.learning_rate);
  w.put_u32(static_cast<std::uint32_t>(artifact.mapper.config.epochs));
  w.put_u32(static_cast<std::uint32_t>(artifact.mapper.config.batch));
  w.put_u32(static_cast<std::uint32_t>(artifact.mapper.config.hidden_widths.size()));
  for (std::size_t h : artifact.mapper.config.hidden_widths) {
    w.put_u32(static_cast<std::uint32_t>(h));
  }
  put_norm(w, artifact.mapper.input_norm);
  put_norm(w, artifact.mapper.output_norm);
  put_mlp(w, artifact.mapper.net);
  put_profile(w, artifact.profile);
  w.put_u64(artifact.dae_hash);
  return w.take();
}

MapperArtifact mapper_from_payload(BinaryReader r) {
  MapperArtifact artifact;
  artifact.mapper.target_speaker_id = r.get_string();
  artifact.mapper.config.seed = r.get_u64();
  artifact.mapper.config.learning_rate = r.get_f64();
  artifact.mapper.config.epochs = r.get_u32();
  artifact.mapper.config.batch = r.get_u32();
  const std::uint32_t hidden = r.get_u32();
  artifact.mapper.config.hidden_widths.clear();
  for (std::uint32_t i = 0; i < hidden; ++i) {
    artifact.mapper.config.hidden_widths.push_back(r.get_u32());
  }
  artifact.mapper.input_norm = get_norm(r);
  artifact.mapper.output_norm = get_norm(r);
  artifact.mapper.net = get_mlp(r);
  artifact.profile = get_profile(r);
  artifact.dae_hash = r.get_u64();
  r.expect_end("mapper payload");
  artifact.mapper.net.validate();
  return artifact;
}

std::vector<std::uint8_t> gmm_payload(const GmmArtifact &artifact) {
  BinaryWriter w;
  w.put_string(artifact.gmm.target_speaker_id);
  w.put_u32(static_cast<std::uint32_t>(artifact.gmm.feature_dim));
  w.put_u64(artifact.gmm.config.seed);
  w.put_u32(static_cast<std::uint32_t>(artifact.gmm.config.max_iters));
  w.put_f64(artifact.gmm.config.tol);
  w.put_u32(static_cast<std::uint32_t>(artifact.gmm.config.kmeans_iters));
  w.put_u8(artifact.gmm.config.diagonal ? 1 : 0);
  w.put_f64_vector(artifact.gmm.weights);
  put_matrix(w, artifact.gmm.means);
  put_matrix(w, artifact.gmm.variances);
  put_profile(w, artifact.profile);
  return w.take();
}

GmmArtifact gmm_from_payload(BinaryReader r) {
  GmmArtifact artifact;
  artifact.gmm.target_speaker_id = r.get_string();
  artifact.gmm.feature_dim = r.get_u32();
  artifact.gmm.config.seed = r.get_u64();
  artifact.gmm.config.max_iters = r.get_u32();
  artifact.gmm.config.tol = r.get_f64();
  artifact.gmm.config.kmeans_iters = r.get_u32();
  artifact.gmm.config.diagonal = r.get_u8() != 0;
  artifact.gmm.weights = r.get_f64_vector();
  artifact.gmm.means = get_matrix(r);
  artifact.gmm.variances = get_matrix(r);
  artifact.profile = get_profile(r);
  r.expect_end("GMM payload");
  artifact.gmm.validate();
  return artifact;
}

}  // namespace

std::uint64_t fnv1a64(const void *data, std::size_t size) {
  const auto *p = static_cast<const std::uint8_t *>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t dae_content_hash(const DaeModel &model) {
  const std::vector<std::uint8_t> payload = dae_payload(model);
  return fnv1a64(payload.data(), payload.size());
}

void save_dae(const DaeModel &model, const std::filesystem::path &path) {
  model.validate();
  write_file(path, container(kKindDae, dae_payload(model)));
}

DaeModel load_dae(const std::filesystem::path &path) {
  return dae_from_payload(BinaryReader(open_container(path, kKindDae)));
}

void save_mapper(const MapperArtifact &artifact, const std::filesystem::path &path) {
  write_file(path, container(kKindMapper, mapper_payload(artifact)));
}

MapperArtifact load_mapper(const std::filesystem::path &path) {
  return mapper_from_payload(BinaryReader(open_container(path, kKindMapper)));
}

void save_gmm(const GmmArtifact &artifact, const std::filesystem::path &path) {
  artifact.gmm.validate();
  write_file(path, container(kKindGmm, gmm_payload(artifact)));
}

GmmArtifact load_gmm(const std::filesystem::path &path) {
  return gmm_from_payload(BinaryReader(open_container(path, kKindGmm)));
}

VcSystem load_system_proposed(const std::filesystem::path &dae_path,
                              const std::filesystem::path &mapper_path) {
  DaeModel dae = load_dae(dae_path);
  MapperArtifact artifact = load_mapper(mapper_path);
  const std::uint64_t have = dae_content_hash(dae);
  if (artifact.dae_hash != have) {
    throw DataError("mapper " + mapper_path.string() +
                    " was trained against a different encoder than " +
                    dae_path.string() + " (hash mismatch)");
  }
  VcSystem system;
  system.kind = SystemKind::kProposed;
  system.dae = std::move(dae);
  system.mapper = std::move(artifact.mapper);
  system.target_profile = std::move(artifact.profile);
  system.validate();
  return system;
}

VcSystem load_system_baseline(const std::filesystem::path &gmm_path) {
  GmmArtifact artifact = load_gmm(gmm_path);
  VcSystem system;
  system.kind = SystemKind::kGmmBaseline;
  system.gmm = std::move(artifact.gmm);
  system.target_profile = std::move(artifact.profile);
  system.validate();
  return system;
}

}  // namespace clvc
