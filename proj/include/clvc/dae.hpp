// clvc/dae.hpp

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

#ifndef CLVC_DAE_HPP_
#define CLVC_DAE_HPP_

#include <cstdint>
#include <vector>

#include "clvc/corpus.hpp"
#include "clvc/matrix.hpp"
#include "clvc/nn.hpp"
#include "clvc/norm.hpp"

namespace clvc {

// Deep autoencoder with a linear bottleneck half the width of the input:
// encoder 512-512-M/2, mirrored decoder 512-512-M with the decoder weight
// matrices tied to the transposes of the encoder's. Hidden layers are
// sigmoid; the bottleneck and the reconstruction output are linear. Trained
// on frames pooled from multiple speakers; the bottleneck output is the
// speaker-independent feature fed to the mapping network.

struct DaeConfig {
  std::vector<std::size_t> hidden_widths{512, 512};
  std::size_t bottleneck = 0;  // 0 means feature_dim / 2
  bool tied = true;            // --untied disables weight tying
  double learning_rate = 0.001;
  std::size_t batch = 64;      // 0 means full batch
  std::size_t max_epochs = 100;
  std::size_t patience = 15;   // epochs without held-out improvement
  double validation_fraction = 0.1;
};

struct DaeModel {
  std::size_t feature_dim = 0;
  bool tied = true;
  std::vector<Layer> encoder;  // hidden sigmoid layers, then linear bottleneck
  std::vector<Layer> decoder;  // hidden sigmoid layers, then linear output;
                               // tied => decoder[j].weights is the transpose of
                               // encoder[K-1-j].weights at all times
  NormStats norm;              // input normalization, stored with the model
  std::uint64_t seed = 0;
  DaeConfig config;

  std::size_t bottleneck_dim() const {
    return encoder.empty() ? 0 : encoder.back().fan_out();
  }
  MlpModel encoder_view() const;   // bottleneck extraction as a plain MLP
  MlpModel unrolled_view() const;  // encoder + decoder stacked

  // Structural invariants incl. tied-transpose check. Throws DataError.
  void validate() const;
};

// Constructs an untrained model. feature_dim must be even (>= 2) unless an
// explicit bottleneck width is configured.
DaeModel dae_build(std::size_t feature_dim, std::uint64_t seed,
                   const DaeConfig &config = {});

// Normalization followed by the encoder stack. Output is n x M/2, real-valued
// and unbounded (linear bottleneck).
Matrix dae_encode(const DaeModel &model, const Matrix &frames);

// Decoder stack followed by de-normalization, back to feature space.
Matrix dae_decode(const DaeModel &model, const Matrix &bottleneck);

struct DaeEpochLoss {
  double train = 0.0;       // minibatch-averaged reconstruction MSE
  double validation = 0.0;  // held-out MSE (train-loss fallback when no split)
};

struct DaeTrainResult {
  DaeModel model;                  // parameters from the best epoch
  std::vector<DaeEpochLoss> trace;
  std::size_t best_epoch = 0;      // 0-based index into trace
};

// RMSprop reconstruction training on frames pooled across all utterances.
// Normalization statistics are computed from the training split before
// training. Held-out monitoring uses the last `validation_fraction` of
// pooled frames by utterance after a seeded shuffle; training stops once the
// monitored MSE has not improved for `patience` consecutive epochs (or at
// max_epochs) and never runs past best_epoch + patience. With tied weights
// every decoder weight gradient is folded into its encoder twin.
DaeTrainResult dae_train(const DaeModel &model, const std::vector<Matrix> &utterances,
                         const DaeConfig &config);

DaeTrainResult dae_train(const DaeModel &model,
                         const std::vector<FeatureUtterance> &corpus,
                         const DaeConfig &config);

}  // namespace clvc

#endif  // CLVC_DAE_HPP_
