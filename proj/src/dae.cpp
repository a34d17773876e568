// clvc/dae.cpp

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

#include "clvc/dae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clvc/errors.hpp"
#include "clvc/rng.hpp"

namespace clvc {

namespace {

// Layer widths/activations of the full autoencoder for a given config:
// encoder hidden (sigmoid) ... bottleneck (linear),
// decoder hidden (sigmoid) ... output (linear).
struct Plan {
  std::vector<std::size_t> widths;
  std::vector<Activation> acts;
  std::size_t encoder_layers = 0;
};

Plan make_plan(std::size_t feature_dim, const DaeConfig &config) {
  std::size_t bottleneck = config.bottleneck;
  if (bottleneck == 0) {
    if (feature_dim < 2 || feature_dim % 2 != 0) {
      throw ConfigError("dae_build: feature_dim must be even and >= 2 for the M/2 "
                        "bottleneck, got " + std::to_string(feature_dim));
    }
    bottleneck = feature_dim / 2;
  }
  Plan plan;
  for (std::size_t w : config.hidden_widths) {
    plan.widths.push_back(w);
    plan.acts.push_back(Activation::kSigmoid);
  }
  plan.widths.push_back(bottleneck);
  plan.acts.push_back(Activation::kLinear);
  plan.encoder_layers = plan.widths.size();
  for (std::size_t i = config.hidden_widths.size(); i > 0; --i) {
    plan.widths.push_back(config.hidden_widths[i - 1]);
    plan.acts.push_back(Activation::kSigmoid);
  }
  plan.widths.push_back(feature_dim);
  plan.acts.push_back(Activation::kLinear);
  return plan;
}

void retie_decoder(DaeModel *model) {
  const std::size_t k = model->encoder.size();
  for (std::size_t j = 0; j < k; ++j) {
    model->decoder[j].weights = transpose(model->encoder[k - 1 - j].weights);
  }
}

MlpModel stack_layers(std::size_t input_dim, const std::vector<Layer> &a,
                      const std::vector<Layer> &b = {}) {
  MlpModel m;
  m.input_dim = input_dim;
  m.layers = a;
  m.layers.insert(m.layers.end(), b.begin(), b.end());
  return m;
}

}  // namespace

MlpModel DaeModel::encoder_view() const { return stack_layers(feature_dim, encoder); }

MlpModel DaeModel::unrolled_view() const {
  return stack_layers(feature_dim, encoder, decoder);
}

void DaeModel::validate() const {
  if (encoder.empty() || decoder.size() != encoder.size()) {
    throw DataError("DaeModel: encoder/decoder layer counts");
  }
  unrolled_view().validate();
  if (encoder.back().activation != Activation::kLinear) {
    throw DataError("DaeModel: bottleneck layer must be linear");
  }
  if (decoder.back().activation != Activation::kLinear) {
    throw DataError("DaeModel: output layer must be linear");
  }
  if (decoder.back().fan_out() != feature_dim) {
    throw DataError("DaeModel: output width != feature_dim");
  }
  if (norm.dim() != feature_dim) {
    throw DataError("DaeModel: normalization dim != feature_dim");
  }
  if (tied) {
    const std::size_t k = encoder.size();
    for (std::size_t j = 0; j < k; ++j) {
      if (!(decoder[j].weights == transpose(encoder[k - 1 - j].weights))) {
        throw DataError("DaeModel: decoder layer " + std::to_string(j) +
                        " is not the transpose of its encoder twin");
      }
    }
  }
}

DaeModel dae_build(std::size_t feature_dim, std::uint64_t seed, const DaeConfig &config) {
  if (feature_dim == 0) throw ConfigError("dae_build: feature_dim must be positive");
  const Plan plan = make_plan(feature_dim, config);
  const MlpModel mlp = build_mlp(feature_dim, plan.widths, plan.acts, seed);

  DaeModel model;
  model.feature_dim = feature_dim;
  model.tied = config.tied;
  model.seed = seed;
  model.config = config;
  model.norm = NormStats::identity(feature_dim);
  model.encoder.assign(mlp.layers.begin(),
                       mlp.layers.begin() + static_cast<long>(plan.encoder_layers));
  model.decoder.assign(mlp.layers.begin() + static_cast<long>(plan.encoder_layers),
                       mlp.layers.end());
  if (model.tied) retie_decoder(&model);
  return model;
}

Matrix dae_encode(const DaeModel &model, const Matrix &frames) {
  if (frames.cols() != model.feature_dim) {
    throw ShapeError("dae_encode: frame dim " + std::to_string(frames.cols()) +
                     " vs model dim " + std::to_string(model.feature_dim));
  }
  if (frames.rows() == 0) return Matrix(0, model.bottleneck_dim());
  return forward(model.encoder_view(), model.norm.apply(frames));
}

Matrix dae_decode(const DaeModel &model, const Matrix &bottleneck) {
  if (bottleneck.cols() != model.bottleneck_dim()) {
    throw ShapeError("dae_decode: bottleneck dim " + std::to_string(bottleneck.cols()) +
                     " vs model dim " + std::to_string(model.bottleneck_dim()));
  }
  if (bottleneck.rows() == 0) return Matrix(0, model.feature_dim);
  MlpModel dec = stack_layers(model.bottleneck_dim(), model.decoder);
  return model.norm.invert(forward(dec, bottleneck));
}

DaeTrainResult dae_train(const DaeModel &model,
                         const std::vector<FeatureUtterance> &corpus,
                         const DaeConfig &config) {
  std::vector<Matrix> frames;
  frames.reserve(corpus.size());
  for (const FeatureUtterance &utt : corpus) frames.push_back(utt.frames);
  return dae_train(model, frames, config);
}

DaeTrainResult dae_train(const DaeModel &model, const std::vector<Matrix> &utterances,
                         const DaeConfig &config) {
  if (utterances.empty()) throw DataError("dae_train: empty corpus");
  std::size_t total_frames = 0;
  for (const Matrix &u : utterances) {
    if (u.cols() != model.feature_dim) {
      throw ShapeError("dae_train: utterance dim " + std::to_string(u.cols()) +
                       " vs model dim " + std::to_string(model.feature_dim));
    }
    total_frames += u.rows();
  }
  if (total_frames == 0) throw DataError("dae_train: corpus has no frames");

  // Held-out split: shuffle utterances, then peel utterances off the end
  // until the requested fraction of pooled frames is covered.
  std::vector<std::size_t> order(utterances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  {
    Rng split_rng(Rng::derive(model.seed, 0x76616c));
    split_rng.shuffle(order);
  }
  const std::size_t want_val = static_cast<std::size_t>(
      std::llround(config.validation_fraction * static_cast<double>(total_frames)));
  std::size_t val_frames = 0;
  std::size_t split_at = order.size();  // [split_at, end) is validation
  while (split_at > 1 && val_frames < want_val) {
    --split_at;
    val_frames += utterances[order[split_at]].rows();
  }

  std::vector<Matrix> train_blocks, val_blocks;
  for (std::size_t i = 0; i < split_at; ++i) train_blocks.push_back(utterances[order[i]]);
  for (std::size_t i = split_at; i < order.size(); ++i) {
    val_blocks.push_back(utterances[order[i]]);
  }
  Matrix train_raw = vstack(train_blocks);
  Matrix val_raw = vstack(val_blocks);
  const bool has_validation = val_raw.rows() > 0;

  DaeTrainResult result;
  result.model = model;
  // Architecture fields stay with the model; training fields are echoed from
  // the run so the artifact records how it was produced.
  result.model.config.learning_rate = config.learning_rate;
  result.model.config.batch = config.batch;
  result.model.config.max_epochs = config.max_epochs;
  result.model.config.patience = config.patience;
  result.model.config.validation_fraction = config.validation_fraction;
  result.model.norm = NormStats::fit(train_raw);
  const Matrix train = result.model.norm.apply(train_raw);
  const Matrix val = has_validation ? result.model.norm.apply(val_raw) : Matrix{};

  MlpModel net = result.model.unrolled_view();
  const std::size_t enc_layers = result.model.encoder.size();
  RmspropState state = RmspropState::for_model(net, config.learning_rate);

  const std::size_t n = train.rows();
  const std::size_t batch = config.batch == 0 ? n : std::min(config.batch, n);

  MlpModel best_net = net;
  double best_loss = std::numeric_limits<double>::infinity();
  std::size_t best_epoch = 0;
  std::size_t since_improve = 0;

  std::vector<std::size_t> perm(n);
  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng epoch_rng(Rng::derive(model.seed, 0x657030 + epoch));
    epoch_rng.shuffle(perm);

    double sse = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      const std::span<const std::size_t> idx(perm.data() + start, stop - start);
      const Matrix x = gather_rows(train, idx);
      Gradients grads = backward(net, x, x);
      if (model.tied) {
        // A tied weight is one parameter used twice; fold the decoder-side
        // gradient into the encoder matrix before the update.
        const std::size_t k = net.layers.size();
        for (std::size_t j = 0; j < enc_layers; ++j) {
          const Matrix gdec_t = transpose(grads.weights[k - 1 - j]);
          Matrix &genc = grads.weights[j];
          for (std::size_t p = 0; p < genc.size(); ++p) {
            genc.data()[p] += gdec_t.data()[p];
          }
          grads.weights[k - 1 - j] = Matrix(grads.weights[k - 1 - j].rows(),
                                            grads.weights[k - 1 - j].cols());
        }
      }
      rmsprop_step(net, grads, state);
      if (model.tied) {
        const std::size_t k = net.layers.size();
        for (std::size_t j = 0; j < enc_layers; ++j) {
          net.layers[k - 1 - j].weights = transpose(net.layers[j].weights);
        }
      }
      sse += mse(forward(net, x), x) * static_cast<double>(x.size());
      seen += x.size();
    }

    DaeEpochLoss loss;
    loss.train = sse / static_cast<double>(seen);
    loss.validation = has_validation ? model_mse(net, val, val) : loss.train;
    if (!std::isfinite(loss.train) || !std::isfinite(loss.validation)) {
      throw TrainingError("dae_train: non-finite loss at epoch " +
                          std::to_string(epoch));
    }
    result.trace.push_back(loss);

    if (loss.validation < best_loss) {
      best_loss = loss.validation;
      best_net = net;
      best_epoch = epoch;
      since_improve = 0;
    } else {
      ++since_improve;
      if (since_improve >= config.patience) break;
    }
  }

  result.best_epoch = best_epoch;
  result.model.encoder.assign(best_net.layers.begin(),
                              best_net.layers.begin() + static_cast<long>(enc_layers));
  result.model.decoder.assign(best_net.layers.begin() + static_cast<long>(enc_layers),
                              best_net.layers.end());
  if (result.model.tied) retie_decoder(&result.model);
  return result;
}

}  // namespace clvc
