// clvc/synth.cpp

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

#include "clvc/synth.hpp"

#include <cmath>
#include <cstdio>

#include "clvc/errors.hpp"
#include "clvc/rng.hpp"

namespace clvc {

namespace {

// Substream tags off the master seed.
constexpr std::uint64_t kStreamPrototypes = 1;
constexpr std::uint64_t kStreamBasis = 2;
constexpr std::uint64_t kStreamContent = 0x10000;
constexpr std::uint64_t kStreamSpeaker = 0x535053;  // default speaker bank
// Substream tags off a speaker seed.
constexpr std::uint64_t kStreamNoise = 0xa000;
constexpr std::uint64_t kStreamF0 = 0xb000;

// Within-phone jitter is anisotropic: full strength inside the content
// subspace, half strength outside it. The out-of-span part keeps the frame
// cloud full rank (so affine speaker maps stay identifiable) while the
// in-span part carries most of the variation a converter should reproduce.
constexpr double kOutOfSpanJitter = 0.12;

std::size_t content_dim(const CorpusConfig &config) {
  return std::max<std::size_t>(1, config.feature_dim / 2);
}

void check_config(const CorpusConfig &config) {
  if (config.phones < 2) throw ConfigError("corpus: need at least 2 phones");
  if (config.feature_dim < 2) throw ConfigError("corpus: feature_dim must be >= 2");
  if (config.min_frames == 0 || config.max_frames < config.min_frames) {
    throw ConfigError("corpus: invalid frame-count range");
  }
  if (config.utterances_per_speaker == 0) {
    throw ConfigError("corpus: utterances_per_speaker must be positive");
  }
  if (config.train_per_speaker > config.utterances_per_speaker) {
    throw ConfigError("corpus: train_per_speaker exceeds utterances_per_speaker");
  }
  if (config.jitter_sigma < 0.0 || config.proto_scale < 0.0 ||
      config.unvoiced_fraction < 0.0 || config.unvoiced_fraction >= 1.0) {
    throw ConfigError("corpus: invalid scale parameters");
  }
}

// Shared phone prototypes, one per row, drawn inside the content subspace.
Matrix prototypes(const CorpusConfig &config, const Matrix &basis) {
  const std::size_t c = content_dim(config);
  Rng rng(Rng::derive(config.master_seed, kStreamPrototypes));
  Matrix latent(config.phones, c);
  for (std::size_t i = 0; i < latent.size(); ++i) {
    latent.data()[i] = config.proto_scale * rng.normal();
  }
  return matmul_nt(latent, basis);  // phones x M
}

struct Content {
  std::size_t frames = 0;
  std::vector<int> phones;   // per frame
  Matrix jitter;             // frames x M
  std::vector<bool> voiced;  // per frame
};

Content make_content(std::size_t index, const CorpusConfig &config,
                     const Matrix &basis) {
  const std::size_t m = config.feature_dim;
  Rng rng(Rng::derive(config.master_seed, kStreamContent + index));
  Content content;
  content.frames =
      config.min_frames + rng.index(config.max_frames - config.min_frames + 1);

  // Phone segments of 4..12 frames.
  content.phones.reserve(content.frames);
  while (content.phones.size() < content.frames) {
    const int phone = static_cast<int>(rng.index(config.phones));
    std::size_t len = 4 + rng.index(9);
    len = std::min(len, content.frames - content.phones.size());
    content.phones.insert(content.phones.end(), len, phone);
  }

  content.jitter = Matrix(content.frames, m);
  if (config.jitter_sigma > 0.0) {
    for (std::size_t i = 0; i < content.jitter.size(); ++i) {
      content.jitter.data()[i] = config.jitter_sigma * rng.normal();
    }
    // Shrink the component orthogonal to the content subspace:
    // j <- out*j + (1 - out) * B B^T j.
    Matrix in_span = matmul(matmul_nt(content.jitter, transpose(basis)),
                            transpose(basis));
    for (std::size_t i = 0; i < content.jitter.size(); ++i) {
      content.jitter.data()[i] = kOutOfSpanJitter * content.jitter.data()[i] +
                                 (1.0 - kOutOfSpanJitter) * in_span.data()[i];
    }
  }

  content.voiced.resize(content.frames);
  bool any_voiced = false;
  for (std::size_t i = 0; i < content.frames; ++i) {
    content.voiced[i] = rng.uniform() >= config.unvoiced_fraction;
    any_voiced = any_voiced || content.voiced[i];
  }
  if (!any_voiced) content.voiced[0] = true;  // keep the F0 transform defined
  return content;
}

std::string utterance_name(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "utt%04zu", index);
  return buf;
}

void check_spec(const SyntheticSpeakerSpec &spec, std::size_t m) {
  if (spec.warp.rows() != m || spec.warp.cols() != m) {
    throw ShapeError("speaker " + spec.speaker_id + ": warp must be " +
                     std::to_string(m) + "x" + std::to_string(m));
  }
  if (spec.offset.size() != m) {
    throw ShapeError("speaker " + spec.speaker_id + ": offset length " +
                     std::to_string(spec.offset.size()));
  }
  if (spec.noise_sigma < 0.0 || !(spec.base_f0 > 0.0) || spec.f0_range < 0.0) {
    throw ConfigError("speaker " + spec.speaker_id + ": invalid scalar parameters");
  }
  const double cond = condition_estimate(spec.warp);
  if (!(cond < 100.0)) {
    throw DataError("speaker " + spec.speaker_id + ": degenerate warp (condition ~" +
                    std::to_string(cond) + ")");
  }
}

}  // namespace

Matrix content_basis(const CorpusConfig &config) {
  check_config(config);
  const std::size_t m = config.feature_dim;
  const std::size_t c = content_dim(config);
  Rng rng(Rng::derive(config.master_seed, kStreamBasis));
  // Gram-Schmidt on a Gaussian draw; columns are stored as rows of an
  // c x M matrix transposed at the end (basis is M x c).
  Matrix cols(c, m);
  for (std::size_t i = 0; i < c; ++i) {
    auto v = cols.row(i);
    for (std::size_t j = 0; j < m; ++j) v[j] = rng.normal();
    for (std::size_t p = 0; p < i; ++p) {
      auto q = cols.row(p);
      const double proj = dot(v, q);
      for (std::size_t j = 0; j < m; ++j) v[j] -= proj * q[j];
    }
    const double nrm = std::sqrt(dot(v, v));
    if (nrm < 1e-12) throw TrainingError("content_basis: degenerate draw");
    for (std::size_t j = 0; j < m; ++j) v[j] /= nrm;
  }
  return transpose(cols);  // M x c, orthonormal columns
}

std::vector<int> utterance_phones(std::size_t index, const CorpusConfig &config) {
  check_config(config);
  return make_content(index, config, content_basis(config)).phones;
}

FeatureUtterance render_utterance(const SyntheticSpeakerSpec &spec, std::size_t index,
                                  const CorpusConfig &config) {
  check_config(config);
  const std::size_t m = config.feature_dim;
  check_spec(spec, m);

  const Matrix basis = content_basis(config);
  const Matrix protos = prototypes(config, basis);
  const Content content = make_content(index, config, basis);
  const std::size_t n = content.frames;

  // content -> warp -> offset (+ observation noise)
  Matrix x(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    auto proto = protos.row(content.phones[i]);
    auto jit = content.jitter.size() > 0 ? content.jitter.row(i)
                                         : std::span<const double>{};
    auto dst = x.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      dst[j] = proto[j] + (jit.empty() ? 0.0 : jit[j]);
    }
  }
  x = matmul_nt(x, spec.warp);
  add_row_inplace(x, spec.offset);
  if (spec.noise_sigma > 0.0) {
    Rng noise_rng(Rng::derive(spec.seed, kStreamNoise + index));
    for (std::size_t i = 0; i < x.size(); ++i) {
      x.data()[i] += spec.noise_sigma * noise_rng.normal();
    }
  }

  FeatureUtterance utt;
  utt.speaker_id = spec.speaker_id;
  utt.utterance_id = utterance_name(index);
  utt.frame_shift = config.frame_shift;
  utt.frame_length = config.frame_length;
  utt.frames = std::move(x);

  Rng f0_rng(Rng::derive(spec.seed, kStreamF0 + index));
  utt.f0.frame_shift = config.frame_shift;
  utt.f0.values.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (content.voiced[i]) {
      utt.f0.values[i] =
          spec.base_f0 + f0_rng.uniform(-0.5 * spec.f0_range, 0.5 * spec.f0_range);
    }
  }

  utt.ap = Matrix(n, config.ap_bands);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = utt.ap.row(i);
    for (std::size_t j = 0; j < config.ap_bands; ++j) {
      row[j] = 0.5 + 0.35 * std::sin(0.13 * static_cast<double>(i) +
                                     0.9 * static_cast<double>(j));
    }
  }
  utt.validate();
  return utt;
}

SyntheticCorpus generate_corpus(const std::vector<SyntheticSpeakerSpec> &specs,
                                const CorpusConfig &config) {
  check_config(config);
  if (specs.empty()) throw ConfigError("generate_corpus: no speaker specs");
  SyntheticCorpus corpus;
  for (std::size_t u = 0; u < config.utterances_per_speaker; ++u) {
    corpus.phone_labels[utterance_name(u)] = utterance_phones(u, config);
  }
  for (const SyntheticSpeakerSpec &spec : specs) {
    for (std::size_t u = 0; u < config.utterances_per_speaker; ++u) {
      FeatureUtterance utt = render_utterance(spec, u, config);
      ManifestEntry entry;
      entry.speaker_id = spec.speaker_id;
      entry.utterance_id = utt.utterance_id;
      entry.path = spec.speaker_id + "/" + utt.utterance_id + ".cvcf";
      entry.split = u < config.train_per_speaker ? "train" : "test";
      corpus.manifest.push_back(std::move(entry));
      corpus.utterances.push_back(std::move(utt));
    }
  }
  return corpus;
}

std::vector<SyntheticSpeakerSpec> default_speaker_specs(std::size_t dae_speakers,
                                                        std::size_t vc_speakers,
                                                        double noise_sigma,
                                                        const CorpusConfig &config) {
  check_config(config);
  const std::size_t m = config.feature_dim;
  const Matrix basis = content_basis(config);
  const Matrix proj = matmul_nt(basis, basis);  // B B^T, M x M

  // Coloration palette: up to 4 orthonormal directions in the complement of
  // the content subspace, shared by all speakers.
  const std::size_t palette_rank = std::min<std::size_t>(4, m - std::min(m, basis.cols()));
  Matrix palette(palette_rank, m);
  {
    Rng prng(Rng::derive(config.master_seed, kStreamSpeaker));
    for (std::size_t p = 0; p < palette_rank; ++p) {
      auto row = palette.row(p);
      std::vector<double> v(m);
      for (std::size_t j = 0; j < m; ++j) v[j] = prng.normal();
      for (std::size_t i = 0; i < m; ++i) row[i] = v[i] - dot(proj.row(i), v);
      for (std::size_t q = 0; q < p; ++q) {
        const double d = dot(row, palette.row(q));
        auto prev = palette.row(q);
        for (std::size_t i = 0; i < m; ++i) row[i] -= d * prev[i];
      }
      const double nrm = std::sqrt(dot(row, row));
      if (nrm < 1e-12) throw TrainingError("default_speaker_specs: degenerate palette");
      for (std::size_t i = 0; i < m; ++i) row[i] /= nrm;
    }
  }

  std::vector<SyntheticSpeakerSpec> specs;
  const std::size_t total = dae_speakers + vc_speakers;
  for (std::size_t k = 0; k < total; ++k) {
    SyntheticSpeakerSpec spec;
    const bool is_dae = k < dae_speakers;
    const std::size_t group_index = is_dae ? k : k - dae_speakers;
    spec.speaker_id =
        (is_dae ? "dae" : "vc") + std::to_string(group_index + 1);
    spec.seed = Rng::derive(config.master_seed, kStreamSpeaker + 1 + k);
    Rng rng(spec.seed);

    // Near-identity warp; the perturbation scale keeps the condition number
    // far below the degeneracy guard.
    spec.warp = Matrix(m, m);
    const double warp_scale = 0.1 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        spec.warp(i, j) = (i == j ? 1.0 : 0.0) + warp_scale * rng.normal();
      }
    }

    // Speaker offsets are combinations of a shared low-rank coloration
    // palette orthogonal to the content subspace. Keeping every speaker's
    // coloration inside one palette matters: the encoder can only learn to
    // contract coloration directions that its training data exercises. The
    // encoder-training group draws free Gaussian coefficients so the whole
    // coloration ball is covered (a hollow shell would leave the interior
    // untrained); the conversion-experiment speakers get a random direction
    // at a fixed radius inside that ball, which keeps the experiment's
    // speaker separations from drifting with the seed. The scales push
    // coloration into the encoder's saturating range, where the squashing
    // nonlinearity contracts off-manifold deviations.
    const std::size_t rank = palette.rows();
    std::vector<double> coeff(rank, 0.0);
    for (double &c : coeff) c = rng.normal();
    if (is_dae) {
      for (double &c : coeff) c *= 1.5;
    } else {
      double nrm = 0.0;
      for (double c : coeff) nrm += c * c;
      nrm = std::sqrt(nrm);
      const double radius = 2.6;
      if (nrm > 1e-12) {
        for (double &c : coeff) c *= radius / nrm;
      }
    }
    spec.offset.assign(m, 0.0);
    for (std::size_t p = 0; p < rank; ++p) {
      for (std::size_t i = 0; i < m; ++i) spec.offset[i] += coeff[p] * palette(p, i);
    }

    // Alternating low/high F0 registers, 3+3 in the DAE group.
    spec.base_f0 = (k % 2 == 0) ? 112.0 + 6.0 * static_cast<double>(k)
                                : 198.0 + 6.0 * static_cast<double>(k);
    spec.f0_range = 30.0;
    spec.noise_sigma = noise_sigma;
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace clvc
