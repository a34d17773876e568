// clvc/nn.hpp

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

#ifndef CLVC_NN_HPP_
#define CLVC_NN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "clvc/matrix.hpp"

namespace clvc {

// Minimal dense feedforward-network engine: sigmoid/linear layers, MSE loss,
// exact backpropagation, RMSprop, and a finite-difference gradient checker.
// Models are plain values; training mutates a private copy, so a trained
// model may be read from any number of threads.

enum class Activation : std::uint8_t { kSigmoid = 0, kLinear = 1 };

struct Layer {
  Matrix weights;            // fan_out x fan_in
  std::vector<double> bias;  // fan_out
  Activation activation = Activation::kSigmoid;

  std::size_t fan_in() const { return weights.cols(); }
  std::size_t fan_out() const { return weights.rows(); }
};

struct MlpModel {
  std::vector<Layer> layers;
  std::size_t input_dim = 0;

  std::size_t output_dim() const {
    return layers.empty() ? input_dim : layers.back().fan_out();
  }
  // Checks the layer chain (fan_in of layer k equals fan_out of layer k-1,
  // bias lengths, first fan_in = input_dim). Throws ConfigError.
  void validate() const;
};

// Builds an MLP with the given layer widths and activations. Weights are
// uniform in +/- sqrt(6 / (fan_in + fan_out)), biases zero, drawn from a
// deterministic seeded stream; two builds with the same arguments are
// bit-identical.
MlpModel build_mlp(std::size_t input_dim, const std::vector<std::size_t> &widths,
                   const std::vector<Activation> &activations, std::uint64_t seed);

// Per-parameter gradients, shaped exactly like the model they came from.
struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
};

Matrix forward(const MlpModel &model, const Matrix &batch);

// Forward pass keeping every layer's post-activation output;
// trace[0] is the input batch, trace[k + 1] the output of layer k.
std::vector<Matrix> forward_trace(const MlpModel &model, const Matrix &batch);

// Mean over all elements of the squared difference. Zero-sized inputs give 0.
double mse(const Matrix &prediction, const Matrix &target);

// Exact analytic gradients of mse(forward(model, batch), target) with respect
// to every weight and bias.
Gradients backward(const MlpModel &model, const Matrix &batch, const Matrix &target);

struct RmspropState {
  double learning_rate = 0.001;
  double decay = 0.9;
  double epsilon = 1e-8;
  std::vector<Matrix> mean_square_w;
  std::vector<std::vector<double>> mean_square_b;

  static RmspropState for_model(const MlpModel &model, double learning_rate = 0.001);
};

// mean_square <- decay * mean_square + (1 - decay) * grad^2
// param       <- param - lr * grad / sqrt(mean_square + epsilon)
// Throws TrainingError on a non-finite gradient, naming the layer.
void rmsprop_step(MlpModel &model, const Gradients &grads, RmspropState &state);

// Worst relative discrepancy between backward() and central finite
// differences over all parameters, with |a - f| / max(|a|, |f|, 1e-8) as the
// error measure (the 1e-8 floor doubles as an absolute-error fallback at
// flat points).
double grad_check(const MlpModel &model, const Matrix &batch, const Matrix &target,
                  double step);

// MSE of forward(model, x) against t, evaluated in row chunks to bound the
// size of intermediate activations.
double model_mse(const MlpModel &model, const Matrix &x, const Matrix &t,
                 std::size_t chunk = 4096);

double sigmoid(double x);

}  // namespace clvc

#endif  // CLVC_NN_HPP_
