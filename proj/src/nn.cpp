// clvc/nn.cpp

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

#include "clvc/nn.hpp"

#include <algorithm>
#include <cmath>

#include "clvc/errors.hpp"
#include "clvc/rng.hpp"

namespace clvc {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void MlpModel::validate() const {
  if (layers.empty()) throw ConfigError("MlpModel: no layers");
  std::size_t prev = input_dim;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const Layer &l = layers[k];
    if (l.fan_in() != prev) {
      throw ConfigError("MlpModel: layer " + std::to_string(k) + " fan_in " +
                        std::to_string(l.fan_in()) + " does not chain from " +
                        std::to_string(prev));
    }
    if (l.bias.size() != l.fan_out()) {
      throw ConfigError("MlpModel: layer " + std::to_string(k) + " bias length " +
                        std::to_string(l.bias.size()) + " vs fan_out " +
                        std::to_string(l.fan_out()));
    }
    prev = l.fan_out();
  }
}

MlpModel build_mlp(std::size_t input_dim, const std::vector<std::size_t> &widths,
                   const std::vector<Activation> &activations, std::uint64_t seed) {
  if (widths.empty() || widths.size() != activations.size()) {
    throw ConfigError("build_mlp: widths/activations mismatch");
  }
  if (input_dim == 0) throw ConfigError("build_mlp: input_dim must be positive");
  Rng rng(seed);
  MlpModel model;
  model.input_dim = input_dim;
  std::size_t fan_in = input_dim;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    Layer layer;
    const std::size_t fan_out = widths[k];
    if (fan_out == 0) throw ConfigError("build_mlp: zero-width layer " + std::to_string(k));
    layer.weights = Matrix(fan_out, fan_in);
    // Scaled uniform init keeps sigmoid pre-activations in the responsive range.
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (std::size_t i = 0; i < fan_out; ++i) {
      auto row = layer.weights.row(i);
      for (std::size_t j = 0; j < fan_in; ++j) row[j] = rng.uniform(-limit, limit);
    }
    layer.bias.assign(fan_out, 0.0);
    layer.activation = activations[k];
    model.layers.push_back(std::move(layer));
    fan_in = fan_out;
  }
  return model;
}

namespace {

void apply_layer(const Layer &layer, std::size_t index, const Matrix &input,
                 Matrix *output) {
  if (input.cols() != layer.fan_in()) {
    throw ShapeError("forward: layer " + std::to_string(index) + " expects input dim " +
                     std::to_string(layer.fan_in()) + ", got " +
                     std::to_string(input.cols()));
  }
  *output = matmul_nt(input, layer.weights);
  add_row_inplace(*output, layer.bias);
  if (layer.activation == Activation::kSigmoid) {
    double *p = output->data();
    const std::size_t n = output->size();
    for (std::size_t i = 0; i < n; ++i) p[i] = sigmoid(p[i]);
  }
}

}  // namespace

Matrix forward(const MlpModel &model, const Matrix &batch) {
  Matrix current = batch;
  Matrix next;
  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    apply_layer(model.layers[k], k, current, &next);
    current = std::move(next);
  }
  return current;
}

std::vector<Matrix> forward_trace(const MlpModel &model, const Matrix &batch) {
  std::vector<Matrix> trace;
  trace.reserve(model.layers.size() + 1);
  trace.push_back(batch);
  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    Matrix out;
    apply_layer(model.layers[k], k, trace.back(), &out);
    trace.push_back(std::move(out));
  }
  return trace;
}

double mse(const Matrix &prediction, const Matrix &target) {
  if (prediction.rows() != target.rows() || prediction.cols() != target.cols()) {
    throw ShapeError("mse: " + std::to_string(prediction.rows()) + "x" +
                     std::to_string(prediction.cols()) + " vs " +
                     std::to_string(target.rows()) + "x" +
                     std::to_string(target.cols()));
  }
  if (prediction.size() == 0) return 0.0;
  double s = 0.0;
  const double *p = prediction.data();
  const double *t = target.data();
  for (std::size_t i = 0; i < prediction.size(); ++i) {
    const double d = p[i] - t[i];
    s += d * d;
  }
  return s / static_cast<double>(prediction.size());
}

Gradients backward(const MlpModel &model, const Matrix &batch, const Matrix &target) {
  const std::vector<Matrix> acts = forward_trace(model, batch);
  const Matrix &out = acts.back();
  if (target.rows() != out.rows() || target.cols() != out.cols()) {
    throw ShapeError("backward: target " + std::to_string(target.rows()) + "x" +
                     std::to_string(target.cols()) + " vs output " +
                     std::to_string(out.rows()) + "x" + std::to_string(out.cols()));
  }
  const std::size_t count = out.size();
  Gradients grads;
  grads.weights.resize(model.layers.size());
  grads.biases.resize(model.layers.size());

  // dL/dY for L = mean((Y - T)^2).
  Matrix delta(out.rows(), out.cols());
  const double scale = count == 0 ? 0.0 : 2.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    delta.data()[i] = scale * (out.data()[i] - target.data()[i]);
  }

  for (std::size_t kk = model.layers.size(); kk > 0; --kk) {
    const std::size_t k = kk - 1;
    const Layer &layer = model.layers[k];
    const Matrix &a = acts[k + 1];
    if (layer.activation == Activation::kSigmoid) {
      for (std::size_t i = 0; i < delta.size(); ++i) {
        const double av = a.data()[i];
        delta.data()[i] *= av * (1.0 - av);
      }
    }
    grads.weights[k] = matmul_tn(delta, acts[k]);
    grads.biases[k] = col_sums(delta);
    if (k > 0) delta = matmul(delta, layer.weights);
  }
  return grads;
}

RmspropState RmspropState::for_model(const MlpModel &model, double learning_rate) {
  RmspropState state;
  state.learning_rate = learning_rate;
  for (const Layer &l : model.layers) {
    state.mean_square_w.emplace_back(l.fan_out(), l.fan_in());
    state.mean_square_b.emplace_back(l.fan_out(), 0.0);
  }
  return state;
}

void rmsprop_step(MlpModel &model, const Gradients &grads, RmspropState &state) {
  if (grads.weights.size() != model.layers.size() ||
      state.mean_square_w.size() != model.layers.size()) {
    throw ShapeError("rmsprop_step: gradient/state layer count mismatch");
  }
  const double lr = state.learning_rate;
  const double decay = state.decay;
  const double eps = state.epsilon;
  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    Layer &layer = model.layers[k];
    const Matrix &gw = grads.weights[k];
    const std::vector<double> &gb = grads.biases[k];
    if (gw.rows() != layer.fan_out() || gw.cols() != layer.fan_in() ||
        gb.size() != layer.bias.size()) {
      throw ShapeError("rmsprop_step: layer " + std::to_string(k) + " gradient shape");
    }
    if (!gw.all_finite()) {
      throw TrainingError("rmsprop_step: non-finite weight gradient in layer " +
                          std::to_string(k));
    }
    for (double g : gb) {
      if (!std::isfinite(g)) {
        throw TrainingError("rmsprop_step: non-finite bias gradient in layer " +
                            std::to_string(k));
      }
    }
    Matrix &msw = state.mean_square_w[k];
    for (std::size_t i = 0; i < gw.size(); ++i) {
      const double g = gw.data()[i];
      double &ms = msw.data()[i];
      ms = decay * ms + (1.0 - decay) * g * g;
      layer.weights.data()[i] -= lr * g / std::sqrt(ms + eps);
    }
    std::vector<double> &msb = state.mean_square_b[k];
    for (std::size_t i = 0; i < gb.size(); ++i) {
      const double g = gb[i];
      msb[i] = decay * msb[i] + (1.0 - decay) * g * g;
      layer.bias[i] -= lr * g / std::sqrt(msb[i] + eps);
    }
  }
}

double grad_check(const MlpModel &model, const Matrix &batch, const Matrix &target,
                  double step) {
  if (!(step > 0.0)) throw ConfigError("grad_check: step must be positive");
  const Gradients analytic = backward(model, batch, target);
  MlpModel probe = model;
  auto loss_at = [&]() { return mse(forward(probe, batch), target); };

  double worst = 0.0;
  auto check_param = [&](double *param, double analytic_g) {
    const double saved = *param;
    *param = saved + step;
    const double up = loss_at();
    *param = saved - step;
    const double down = loss_at();
    *param = saved;
    const double fd = (up - down) / (2.0 * step);
    const double rel = std::abs(analytic_g - fd) /
                       std::max({std::abs(analytic_g), std::abs(fd), 1e-8});
    worst = std::max(worst, rel);
  };

  for (std::size_t k = 0; k < probe.layers.size(); ++k) {
    Layer &layer = probe.layers[k];
    for (std::size_t i = 0; i < layer.weights.size(); ++i) {
      check_param(layer.weights.data() + i, analytic.weights[k].data()[i]);
    }
    for (std::size_t i = 0; i < layer.bias.size(); ++i) {
      check_param(layer.bias.data() + i, analytic.biases[k][i]);
    }
  }
  return worst;
}

double model_mse(const MlpModel &model, const Matrix &x, const Matrix &t,
                 std::size_t chunk) {
  if (x.rows() != t.rows()) {
    throw ShapeError("model_mse: row mismatch " + std::to_string(x.rows()) + " vs " +
                     std::to_string(t.rows()));
  }
  if (x.rows() == 0) return 0.0;
  if (chunk == 0) chunk = x.rows();
  double sse = 0.0;
  std::size_t total = 0;
  std::vector<std::size_t> idx;
  for (std::size_t start = 0; start < x.rows(); start += chunk) {
    const std::size_t stop = std::min(x.rows(), start + chunk);
    idx.resize(stop - start);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = start + i;
    const Matrix xs = gather_rows(x, idx);
    const Matrix ts = gather_rows(t, idx);
    const Matrix out = forward(model, xs);
    sse += mse(out, ts) * static_cast<double>(out.size());
    total += out.size();
  }
  return total == 0 ? 0.0 : sse / static_cast<double>(total);
}

}  // namespace clvc
