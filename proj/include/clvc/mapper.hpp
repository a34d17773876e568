// clvc/mapper.hpp

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

#ifndef CLVC_MAPPER_HPP_
#define CLVC_MAPPER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "clvc/matrix.hpp"
#include "clvc/nn.hpp"
#include "clvc/norm.hpp"

namespace clvc {

// Target-speaker mapping network: (M/2)L 50N 50N ML, from bottleneck features
// to the target's spectral features. Inputs are presented as-is (identity
// input layer); hidden units are sigmoid, the output layer is linear. Both
// sides are z-normalized with statistics computed from the training data and
// stored in the model.

struct MapperConfig {
  double learning_rate = 0.001;
  std::size_t epochs = 25;  // fixed count, no early stopping
  std::size_t batch = 64;   // 0 means full batch
  std::vector<std::size_t> hidden_widths{50, 50};
  std::uint64_t seed = 1;
};

struct MapperModel {
  MlpModel net;
  NormStats input_norm;   // over bottleneck dims
  NormStats output_norm;  // over feature dims
  std::string target_speaker_id;
  MapperConfig config;
};

struct MapperTrainResult {
  MapperModel model;
  std::vector<double> trace;  // normalized-space MSE after each epoch,
                              // exactly config.epochs entries
};

// Trains on frame-aligned (bottleneck, target) rows for exactly
// config.epochs epochs. Throws ShapeError when row counts differ and
// DataError on an empty training set. Deterministic given the seed.
MapperTrainResult mapper_train(const Matrix &bottleneck, const Matrix &targets,
                               const MapperConfig &config = {},
                               std::string target_speaker_id = {});

// normalize -> net -> de-normalize. Output rows always have the target
// feature dimension.
Matrix mapper_convert(const MapperModel &model, const Matrix &bottleneck);

}  // namespace clvc

#endif  // CLVC_MAPPER_HPP_
