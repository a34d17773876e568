// clvc/mapper.cpp

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

#include "clvc/mapper.hpp"

#include <algorithm>
#include <cmath>

#include "clvc/errors.hpp"
#include "clvc/rng.hpp"

namespace clvc {

MapperTrainResult mapper_train(const Matrix &bottleneck, const Matrix &targets,
                               const MapperConfig &config,
                               std::string target_speaker_id) {
  if (bottleneck.rows() != targets.rows()) {
    throw ShapeError("mapper_train: misaligned rows, " +
                     std::to_string(bottleneck.rows()) + " bottleneck vs " +
                     std::to_string(targets.rows()) + " target");
  }
  if (bottleneck.rows() == 0) throw DataError("mapper_train: no training pairs");

  MapperTrainResult result;
  result.model.target_speaker_id = std::move(target_speaker_id);
  result.model.config = config;
  result.model.input_norm = NormStats::fit(bottleneck);
  result.model.output_norm = NormStats::fit(targets);
  const Matrix x = result.model.input_norm.apply(bottleneck);
  const Matrix t = result.model.output_norm.apply(targets);

  std::vector<std::size_t> widths = config.hidden_widths;
  std::vector<Activation> acts(widths.size(), Activation::kSigmoid);
  widths.push_back(targets.cols());
  acts.push_back(Activation::kLinear);
  MlpModel net = build_mlp(bottleneck.cols(), widths, acts, config.seed);
  RmspropState state = RmspropState::for_model(net, config.learning_rate);

  const std::size_t n = x.rows();
  const std::size_t batch = config.batch == 0 ? n : std::min(config.batch, n);
  std::vector<std::size_t> perm(n);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng epoch_rng(Rng::derive(config.seed, 0x6d7030 + epoch));
    epoch_rng.shuffle(perm);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      const std::span<const std::size_t> idx(perm.data() + start, stop - start);
      const Gradients grads = backward(net, gather_rows(x, idx), gather_rows(t, idx));
      rmsprop_step(net, grads, state);
    }
    const double loss = model_mse(net, x, t);
    if (!std::isfinite(loss)) {
      throw TrainingError("mapper_train: non-finite loss at epoch " +
                          std::to_string(epoch));
    }
    result.trace.push_back(loss);
  }

  result.model.net = std::move(net);
  return result;
}

Matrix mapper_convert(const MapperModel &model, const Matrix &bottleneck) {
  if (bottleneck.cols() != model.net.input_dim) {
    throw ShapeError("mapper_convert: input dim " + std::to_string(bottleneck.cols()) +
                     " vs model dim " + std::to_string(model.net.input_dim));
  }
  if (bottleneck.rows() == 0) return Matrix(0, model.net.output_dim());
  return model.output_norm.invert(forward(model.net, model.input_norm.apply(bottleneck)));
}

}  // namespace clvc
