// tests/test_mapper.cpp

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
#include "clvc/mapper.hpp"
#include "clvc/rng.hpp"

using namespace clvc;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng &rng, double scale = 1.0) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.normal();
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("mapper");

TEST_CASE("mapper_train: topology is (M/2)L 50N 50N ML") {
  Rng rng(81);
  const Matrix bottleneck = random_matrix(120, 20, rng);
  const Matrix targets = random_matrix(120, 40, rng);
  MapperConfig config;
  config.epochs = 1;
  const MapperTrainResult r = mapper_train(bottleneck, targets, config);
  REQUIRE(r.model.net.layers.size() == 3);
  CHECK(r.model.net.input_dim == 20);
  CHECK(r.model.net.layers[0].fan_out() == 50);
  CHECK(r.model.net.layers[0].activation == Activation::kSigmoid);
  CHECK(r.model.net.layers[1].fan_out() == 50);
  CHECK(r.model.net.layers[1].activation == Activation::kSigmoid);
  CHECK(r.model.net.layers[2].fan_out() == 40);
  CHECK(r.model.net.layers[2].activation == Activation::kLinear);
}

TEST_CASE("mapper_train: trace has exactly `epochs` entries (25 by default)") {
  Rng rng(82);
  const Matrix x = random_matrix(60, 4, rng);
  const Matrix t = random_matrix(60, 6, rng);
  const MapperTrainResult r = mapper_train(x, t);
  CHECK(r.trace.size() == 25);
}

TEST_CASE("mapper_train: constant targets converge through the std floor") {
  Rng rng(83);
  const Matrix x = random_matrix(80, 3, rng);
  Matrix t(80, 2);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    t(i, 0) = 4.2;
    t(i, 1) = -1.7;
  }
  const MapperTrainResult r = mapper_train(x, t);
  const Matrix pred = mapper_convert(r.model, x);
  for (std::size_t i = 0; i < pred.rows(); ++i) {
    CHECK(std::abs(pred(i, 0) - 4.2) < 1e-3);
    CHECK(std::abs(pred(i, 1) + 1.7) < 1e-3);
  }
}

TEST_CASE("mapper_train: a linear map is learned to <5% of initial loss") {
  Rng rng(84);
  const Matrix x = random_matrix(600, 4, rng);
  Matrix t(600, 3);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    t(i, 0) = 0.8 * x(i, 0) - 0.3 * x(i, 2) + 0.5;
    t(i, 1) = -0.6 * x(i, 1) + 0.2 * x(i, 3) - 1.0;
    t(i, 2) = 0.4 * x(i, 0) + 0.4 * x(i, 1) + 0.1;
  }
  MapperConfig config;
  config.batch = 8;
  const MapperTrainResult r = mapper_train(x, t, config);
  CHECK(r.trace.back() < 0.05 * r.trace.front());
}

TEST_CASE("mapper_train: determinism, alignment, and empty input") {
  Rng rng(85);
  const Matrix x = random_matrix(50, 4, rng);
  const Matrix t = random_matrix(50, 5, rng);
  MapperConfig config;
  config.epochs = 3;
  const MapperTrainResult a = mapper_train(x, t, config);
  const MapperTrainResult b = mapper_train(x, t, config);
  for (std::size_t k = 0; k < a.model.net.layers.size(); ++k) {
    CHECK(a.model.net.layers[k].weights == b.model.net.layers[k].weights);
    CHECK(a.model.net.layers[k].bias == b.model.net.layers[k].bias);
  }
  CHECK_THROWS_AS(mapper_train(x, random_matrix(49, 5, rng), config), ShapeError);
  CHECK_THROWS_AS(mapper_train(Matrix(0, 4), Matrix(0, 5), config), DataError);
}

TEST_CASE("mapper_convert: self-consistency with the final training loss") {
  Rng rng(86);
  const Matrix x = random_matrix(100, 3, rng);
  const Matrix t = random_matrix(100, 4, rng);
  MapperConfig config;
  config.epochs = 5;
  const MapperTrainResult r = mapper_train(x, t, config);
  // Converting the training inputs and renormalizing both sides reproduces
  // the last trace entry exactly (same full pass, de-normalized consistently).
  const Matrix pred = mapper_convert(r.model, x);
  const double normed_mse =
      mse(r.model.output_norm.apply(pred), r.model.output_norm.apply(t));
  CHECK(normed_mse == doctest::Approx(r.trace.back()).epsilon(1e-9));
}

TEST_CASE("mapper_convert: empty input, dim checks, output dimension") {
  Rng rng(87);
  const Matrix x = random_matrix(40, 3, rng);
  const Matrix t = random_matrix(40, 6, rng);
  MapperConfig config;
  config.epochs = 2;
  const MapperTrainResult r = mapper_train(x, t, config);
  const Matrix empty = mapper_convert(r.model, Matrix(0, 3));
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 6);
  CHECK(mapper_convert(r.model, x).cols() == 6);
  CHECK_THROWS_AS(mapper_convert(r.model, Matrix(1, 4)), ShapeError);
}

TEST_CASE("mapper_convert: zero-variance input dims stay finite via the floor") {
  Rng rng(88);
  Matrix x = random_matrix(30, 3, rng);
  for (std::size_t i = 0; i < x.rows(); ++i) x(i, 1) = 2.5;  // constant dim
  const Matrix t = random_matrix(30, 2, rng);
  MapperConfig config;
  config.epochs = 2;
  const MapperTrainResult r = mapper_train(x, t, config);
  Matrix probe = random_matrix(5, 3, rng);  // non-constant in dim 1 now
  const Matrix out = mapper_convert(r.model, probe);
  CHECK(out.all_finite());
}

TEST_CASE("normalization round-trip is exact above the floor") {
  Rng rng(89);
  const Matrix x = random_matrix(50, 6, rng, 3.0);
  const NormStats stats = NormStats::fit(x);
  const Matrix back = stats.invert(stats.apply(x));
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(back.data()[i] == doctest::Approx(x.data()[i]).epsilon(1e-12));
  }
}

TEST_SUITE_END();
