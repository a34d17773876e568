// tests/test_nn.cpp

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

#include <cmath>

#include <doctest.h>

#include "clvc/errors.hpp"
#include "clvc/nn.hpp"
#include "clvc/rng.hpp"
#include "oracles.hpp"

using namespace clvc;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng &rng, double scale = 1.0) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.normal();
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("nncore");

TEST_CASE("forward: zero sigmoid layer emits 0.5 everywhere") {
  MlpModel model;
  model.input_dim = 3;
  Layer l;
  l.weights = Matrix(4, 3);
  l.bias.assign(4, 0.0);
  l.activation = Activation::kSigmoid;
  model.layers.push_back(l);

  Rng rng(7);
  const Matrix out = forward(model, random_matrix(5, 3, rng));
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.data()[i] == 0.5);
}

TEST_CASE("forward: identity linear layer is the identity") {
  MlpModel model;
  model.input_dim = 3;
  Layer l;
  l.weights = Matrix(3, 3);
  for (std::size_t i = 0; i < 3; ++i) l.weights(i, i) = 1.0;
  l.bias.assign(3, 0.0);
  l.activation = Activation::kLinear;
  model.layers.push_back(l);

  Rng rng(8);
  const Matrix x = random_matrix(4, 3, rng);
  CHECK(forward(model, x) == x);
}

TEST_CASE("forward: two-layer net matches a scalar-loop recomputation") {
  const MlpModel model = build_mlp(
      3, {5, 2}, {Activation::kSigmoid, Activation::kLinear}, 42);
  Rng rng(43);
  const Matrix x = random_matrix(6, 3, rng);
  const Matrix out = forward(model, x);

  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::vector<double> v(x.row(r).begin(), x.row(r).end());
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
      const Layer &l = model.layers[k];
      std::vector<std::vector<double>> w(l.fan_out());
      for (std::size_t i = 0; i < l.fan_out(); ++i) {
        w[i].assign(l.weights.row(i).begin(), l.weights.row(i).end());
      }
      v = oracle::layer_forward(w, l.bias, v, l.activation == Activation::kSigmoid);
    }
    for (std::size_t j = 0; j < out.cols(); ++j) {
      CHECK(out(r, j) == doctest::Approx(v[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("forward: dimension mismatch names the offending layer") {
  const MlpModel model = build_mlp(3, {2}, {Activation::kLinear}, 1);
  CHECK_THROWS_WITH_AS(forward(model, Matrix(1, 4)),
                       doctest::Contains("layer 0"), ShapeError);
}

TEST_CASE("forward: sigmoid outputs stay inside (0,1)") {
  const MlpModel model =
      build_mlp(4, {6, 6}, {Activation::kSigmoid, Activation::kSigmoid}, 3);
  Rng rng(4);
  const Matrix out = forward(model, random_matrix(20, 4, rng, 50.0));
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out.data()[i] > 0.0);
    CHECK(out.data()[i] < 1.0);
  }
}

TEST_CASE("mse basics and loop oracle") {
  Rng rng(5);
  const Matrix a = random_matrix(4, 3, rng);
  CHECK(mse(a, a) == 0.0);

  Matrix p(1, 2), t(1, 2);
  p(0, 0) = 1.0;
  p(0, 1) = 1.0;
  CHECK(mse(p, t) == doctest::Approx(1.0));

  const Matrix b = random_matrix(4, 3, rng);
  CHECK(mse(a, b) == doctest::Approx(oracle::mse_loop(a, b)).epsilon(1e-14));
  CHECK_THROWS_AS(mse(a, Matrix(4, 2)), ShapeError);
}

TEST_CASE("backward: zero error means zero gradients") {
  const MlpModel model = build_mlp(
      3, {4, 2}, {Activation::kSigmoid, Activation::kLinear}, 11);
  Rng rng(12);
  const Matrix x = random_matrix(5, 3, rng);
  const Gradients g = backward(model, x, forward(model, x));
  for (const Matrix &gw : g.weights) {
    for (std::size_t i = 0; i < gw.size(); ++i) CHECK(gw.data()[i] == 0.0);
  }
  for (const auto &gb : g.biases) {
    for (double v : gb) CHECK(v == 0.0);
  }
}

TEST_CASE("backward: single linear layer matches the closed form") {
  // L = 1/d * ||Wx + b - t||^2 for one sample, so dL/dW = 2/d (Wx+b-t) x^T.
  MlpModel model;
  model.input_dim = 3;
  Layer l;
  Rng rng(13);
  l.weights = random_matrix(2, 3, rng);
  l.bias = {0.3, -0.2};
  l.activation = Activation::kLinear;
  model.layers.push_back(l);

  const Matrix x = random_matrix(1, 3, rng);
  const Matrix t = random_matrix(1, 2, rng);
  const Matrix y = forward(model, x);
  const Gradients g = backward(model, x, t);

  const double scale = 2.0 / 2.0;  // 2 / (n * d) with n=1, d=2
  for (std::size_t i = 0; i < 2; ++i) {
    const double resid = y(0, i) - t(0, i);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(g.weights[0](i, j) ==
            doctest::Approx(scale * resid * x(0, j)).epsilon(1e-12));
    }
    CHECK(g.biases[0][i] == doctest::Approx(scale * resid).epsilon(1e-12));
  }
}

TEST_CASE("backward: matches central finite differences on a seeded 3-5-2 net") {
  const MlpModel model = build_mlp(
      3, {5, 2}, {Activation::kSigmoid, Activation::kLinear}, 21);
  Rng rng(22);
  const Matrix x = random_matrix(7, 3, rng);
  const Matrix t = random_matrix(7, 2, rng);
  const Gradients g = backward(model, x, t);
  CHECK(oracle::finite_difference_worst(model, x, t, g, 1e-6) < 1e-5);
}

TEST_CASE("backward vs finite differences: random nets up to 10x10x10") {
  for (std::uint64_t seed = 100; seed < 106; ++seed) {
    Rng rng(seed);
    const std::size_t in = 1 + rng.index(10);
    const std::size_t h = 1 + rng.index(10);
    const std::size_t out = 1 + rng.index(10);
    const Activation a1 = rng.uniform() < 0.5 ? Activation::kSigmoid : Activation::kLinear;
    const MlpModel model = build_mlp(in, {h, out}, {a1, Activation::kLinear}, seed);
    const Matrix x = random_matrix(4, in, rng);
    const Matrix t = random_matrix(4, out, rng);
    const Gradients g = backward(model, x, t);
    CAPTURE(seed);
    CHECK(oracle::finite_difference_worst(model, x, t, g, 1e-6) < 1e-5);
  }
}

TEST_CASE("rmsprop: zero gradient leaves parameters untouched") {
  MlpModel model = build_mlp(2, {3}, {Activation::kSigmoid}, 31);
  const MlpModel before = model;
  RmspropState state = RmspropState::for_model(model);
  Gradients g;
  g.weights.emplace_back(3, 2);
  g.biases.emplace_back(3, 0.0);
  rmsprop_step(model, g, state);
  CHECK(model.layers[0].weights == before.layers[0].weights);
  CHECK(model.layers[0].bias == before.layers[0].bias);
}

TEST_CASE("rmsprop: one and two steps on a scalar match the recurrence") {
  MlpModel model;
  model.input_dim = 1;
  Layer l;
  l.weights = Matrix(1, 1);
  l.weights(0, 0) = 0.5;
  l.bias = {0.0};
  l.activation = Activation::kLinear;
  model.layers.push_back(l);
  RmspropState state = RmspropState::for_model(model, 0.01);

  const double g1 = 0.3;
  Gradients g;
  g.weights.emplace_back(1, 1);
  g.weights[0](0, 0) = g1;
  g.biases.emplace_back(1, 0.0);
  rmsprop_step(model, g, state);

  double ms = 0.1 * g1 * g1;
  double w = 0.5 - 0.01 * g1 / std::sqrt(ms + 1e-8);
  CHECK(model.layers[0].weights(0, 0) == doctest::Approx(w).epsilon(1e-14));

  const double g2 = -0.2;
  g.weights[0](0, 0) = g2;
  rmsprop_step(model, g, state);
  ms = 0.9 * ms + 0.1 * g2 * g2;
  w = w - 0.01 * g2 / std::sqrt(ms + 1e-8);
  CHECK(model.layers[0].weights(0, 0) == doctest::Approx(w).epsilon(1e-14));
}

TEST_CASE("rmsprop: non-finite gradient raises a training error naming the layer") {
  MlpModel model = build_mlp(2, {2}, {Activation::kLinear}, 33);
  RmspropState state = RmspropState::for_model(model);
  Gradients g;
  g.weights.emplace_back(2, 2);
  g.weights[0](1, 1) = std::numeric_limits<double>::quiet_NaN();
  g.biases.emplace_back(2, 0.0);
  CHECK_THROWS_WITH_AS(rmsprop_step(model, g, state), doctest::Contains("layer 0"),
                       TrainingError);
}

TEST_CASE("rmsprop: one step on a 1-parameter quadratic decreases the loss") {
  // Model y = w * x with x = 1, target 1: loss (w - 1)^2, start at w = 0.
  MlpModel model;
  model.input_dim = 1;
  Layer l;
  l.weights = Matrix(1, 1);
  l.bias = {0.0};
  l.activation = Activation::kLinear;
  model.layers.push_back(l);
  Matrix x(1, 1, 1.0), t(1, 1, 1.0);
  RmspropState state = RmspropState::for_model(model, 0.001);
  const double before = mse(forward(model, x), t);
  rmsprop_step(model, backward(model, x, t), state);
  CHECK(mse(forward(model, x), t) < before);
}

TEST_CASE("grad_check bounds") {
  Rng rng(41);
  SUBCASE("linear 2-2") {
    const MlpModel model = build_mlp(2, {2}, {Activation::kLinear}, 44);
    const Matrix x = random_matrix(4, 2, rng);
    const Matrix t = random_matrix(4, 2, rng);
    CHECK(grad_check(model, x, t, 1e-6) < 1e-6);
  }
  SUBCASE("sigmoid 3-4-2") {
    const MlpModel model = build_mlp(
        3, {4, 2}, {Activation::kSigmoid, Activation::kLinear}, 45);
    const Matrix x = random_matrix(4, 3, rng);
    const Matrix t = random_matrix(4, 2, rng);
    CHECK(grad_check(model, x, t, 1e-6) < 1e-5);
  }
  SUBCASE("degenerate zero-gradient case returns 0") {
    const MlpModel model = build_mlp(2, {2}, {Activation::kLinear}, 46);
    const Matrix x = random_matrix(3, 2, rng);
    CHECK(grad_check(model, x, forward(model, x), 1e-6) == 0.0);
  }
  SUBCASE("non-positive step is rejected") {
    const MlpModel model = build_mlp(2, {2}, {Activation::kLinear}, 47);
    CHECK_THROWS_AS(grad_check(model, Matrix(1, 2), Matrix(1, 2), 0.0), ConfigError);
  }
}

TEST_CASE("build_mlp: deterministic and shape-checked") {
  const MlpModel a = build_mlp(3, {4, 2}, {Activation::kSigmoid, Activation::kLinear}, 9);
  const MlpModel b = build_mlp(3, {4, 2}, {Activation::kSigmoid, Activation::kLinear}, 9);
  REQUIRE(a.layers.size() == 2);
  CHECK(a.layers[0].weights == b.layers[0].weights);
  CHECK(a.layers[1].weights == b.layers[1].weights);
  // Init range is +/- sqrt(6 / (fan_in + fan_out)).
  const double limit = std::sqrt(6.0 / (3 + 4));
  for (std::size_t i = 0; i < a.layers[0].weights.size(); ++i) {
    CHECK(std::abs(a.layers[0].weights.data()[i]) <= limit);
  }
  for (double v : a.layers[0].bias) CHECK(v == 0.0);
  CHECK_THROWS_AS(build_mlp(3, {}, {}, 1), ConfigError);
  CHECK_THROWS_AS(build_mlp(0, {2}, {Activation::kLinear}, 1), ConfigError);
}

TEST_SUITE_END();
