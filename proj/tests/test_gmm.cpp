// tests/test_gmm.cpp

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
#include "clvc/gmm.hpp"
#include "clvc/rng.hpp"
#include "oracles.hpp"

using namespace clvc;

namespace {

Matrix cluster_data(const std::vector<std::vector<double>> &centers, double sigma,
                    std::size_t per_cluster, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = centers.front().size();
  Matrix frames(centers.size() * per_cluster, d);
  std::size_t at = 0;
  for (const auto &c : centers) {
    for (std::size_t i = 0; i < per_cluster; ++i, ++at) {
      for (std::size_t j = 0; j < d; ++j) {
        frames(at, j) = c[j] + sigma * rng.normal();
      }
    }
  }
  return frames;
}

}  // namespace

TEST_SUITE_BEGIN("gmm");

TEST_CASE("gaussian_logpdf: standard normal values") {
  const std::vector<double> zero1{0.0}, one1{1.0};
  CHECK(gaussian_logpdf(zero1, zero1, one1) ==
        doctest::Approx(std::log(1.0 / std::sqrt(2.0 * M_PI))).epsilon(1e-12));

  const std::vector<double> zero2{0.0, 0.0}, one2{1.0, 1.0};
  CHECK(gaussian_logpdf(zero2, zero2, one2) ==
        doctest::Approx(-std::log(2.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("gaussian_logpdf: matches the scalar density oracle") {
  Rng rng(51);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> x(5), mean(5), var(5);
    for (std::size_t j = 0; j < 5; ++j) {
      x[j] = rng.normal();
      mean[j] = rng.normal();
      var[j] = 0.2 + rng.uniform();
    }
    CHECK(gaussian_logpdf(x, mean, var) ==
          doctest::Approx(oracle::gaussian_logpdf_scalar(x, mean, var)).epsilon(1e-10));
  }
}

TEST_CASE("gaussian_logpdf: variance below floor is rejected") {
  const std::vector<double> x{0.0}, mean{0.0}, var{1e-9};
  CHECK_THROWS_AS(gaussian_logpdf(x, mean, var), ConfigError);
  CHECK_THROWS_AS(gaussian_logpdf(x, std::vector<double>{0.0, 0.0}, var), ShapeError);
}

TEST_CASE("gmm_fit: a single component recovers sample statistics") {
  Rng rng(52);
  Matrix frames(200, 3);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frames.data()[i] = 2.0 * rng.normal() + 0.5;
  }
  const GmmFitResult fit = gmm_fit(frames, 1);
  REQUIRE(fit.model.components() == 1);
  CHECK(fit.model.weights[0] == doctest::Approx(1.0).epsilon(1e-12));

  // Sample mean and biased sample variance, floored.
  for (std::size_t j = 0; j < 3; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < frames.rows(); ++i) mean += frames(i, j);
    mean /= static_cast<double>(frames.rows());
    double var = 0.0;
    for (std::size_t i = 0; i < frames.rows(); ++i) {
      var += (frames(i, j) - mean) * (frames(i, j) - mean);
    }
    var = std::max(var / static_cast<double>(frames.rows()), GmmModel::kVarianceFloor);
    CHECK(fit.model.means(0, j) == doctest::Approx(mean).epsilon(1e-9));
    CHECK(fit.model.variances(0, j) == doctest::Approx(var).epsilon(1e-6));
  }
}

TEST_CASE("gmm_fit: recovers two well-separated clusters") {
  const std::vector<std::vector<double>> centers{{-4.0, 0.0, 1.0}, {4.0, 2.0, -1.0}};
  const Matrix frames = cluster_data(centers, 0.3, 300, 53);
  GmmConfig config;
  config.seed = 9;
  const GmmFitResult fit = gmm_fit(frames, 2, config);
  REQUIRE(fit.model.components() == 2);

  // Match each true center to its closest recovered mean.
  for (const auto &c : centers) {
    double best = 1e9;
    for (std::size_t i = 0; i < 2; ++i) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        d2 += (fit.model.means(i, j) - c[j]) * (fit.model.means(i, j) - c[j]);
      }
      best = std::min(best, std::sqrt(d2));
    }
    CHECK(best < 0.1);
  }
  for (double w : fit.model.weights) CHECK(w == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("gmm_fit: log-likelihood trace is non-decreasing across seeds") {
  Rng data_rng(54);
  Matrix frames(400, 4);
  for (std::size_t i = 0; i < frames.size(); ++i) frames.data()[i] = data_rng.normal();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GmmConfig config;
    config.seed = seed;
    config.tol = 0.0;  // run all iterations
    config.max_iters = 40;
    const GmmFitResult fit = gmm_fit(frames, 6, config);
    for (std::size_t i = 1; i < fit.llh_trace.size(); ++i) {
      CAPTURE(seed);
      CHECK(fit.llh_trace[i] >= fit.llh_trace[i - 1] - 1e-8);
    }
  }
}

TEST_CASE("gmm_fit: weights stay on the simplex and variances floored") {
  const Matrix frames = cluster_data({{0.0, 0.0}, {3.0, 3.0}, {-3.0, 1.0}}, 0.5, 100, 55);
  const GmmFitResult fit = gmm_fit(frames, 8);
  double sum = 0.0;
  for (double w : fit.model.weights) {
    CHECK(w >= 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t i = 0; i < fit.model.variances.size(); ++i) {
    CHECK(fit.model.variances.data()[i] >= GmmModel::kVarianceFloor);
  }
}

TEST_CASE("gmm_fit: determinism and input validation") {
  const Matrix frames = cluster_data({{0.0}, {5.0}}, 0.4, 50, 56);
  GmmConfig config;
  config.seed = 3;
  const GmmFitResult a = gmm_fit(frames, 4, config);
  const GmmFitResult b = gmm_fit(frames, 4, config);
  CHECK(a.model.means == b.model.means);
  CHECK(a.model.variances == b.model.variances);
  CHECK(a.model.weights == b.model.weights);

  CHECK_THROWS_AS(gmm_fit(Matrix(3, 2), 4), DataError);
  GmmConfig full;
  full.diagonal = false;
  CHECK_THROWS_AS(gmm_fit(frames, 2, full), ConfigError);
}

TEST_CASE("gmm_tokenize: frame at a mean picks that mean") {
  GmmModel model;
  model.feature_dim = 2;
  model.weights = {0.25, 0.25, 0.25, 0.25};
  model.means = Matrix(4, 2);
  model.means(0, 0) = -3.0;
  model.means(1, 0) = 0.0;
  model.means(2, 0) = 3.0;
  model.means(3, 1) = 3.0;
  model.variances = Matrix(4, 2, 1.0);

  Matrix frame(1, 2);
  frame(0, 0) = 3.0;
  const TokenizeResult r = gmm_tokenize(model, frame);
  CHECK(r.indices[0] == 2);
  CHECK(r.frames(0, 0) == 3.0);
  CHECK(r.frames(0, 1) == 0.0);
}

TEST_CASE("gmm_tokenize: matches an exhaustive brute-force scorer") {
  const Matrix frames = cluster_data({{0.0, 1.0}, {4.0, -2.0}}, 2.0, 100, 57);
  GmmConfig config;
  config.seed = 12;
  const GmmModel model = gmm_fit(frames, 4, config).model;

  Rng rng(58);
  Matrix probes(64, 2);
  for (std::size_t i = 0; i < probes.size(); ++i) probes.data()[i] = 4.0 * rng.normal();
  const TokenizeResult r = gmm_tokenize(model, probes);

  for (std::size_t i = 0; i < probes.rows(); ++i) {
    std::size_t best = 0;
    double best_lp = -1e300;
    for (std::size_t c = 0; c < model.components(); ++c) {
      std::vector<double> x(probes.row(i).begin(), probes.row(i).end());
      std::vector<double> mean(model.means.row(c).begin(), model.means.row(c).end());
      std::vector<double> var(model.variances.row(c).begin(),
                              model.variances.row(c).end());
      const double lp =
          std::log(model.weights[c]) + oracle::gaussian_logpdf_scalar(x, mean, var);
      if (lp > best_lp) {
        best_lp = lp;
        best = c;
      }
    }
    CHECK(r.indices[i] == best);
    CHECK(std::equal(r.frames.row(i).begin(), r.frames.row(i).end(),
                     model.means.row(best).begin()));
  }
}

TEST_CASE("gmm_tokenize: argmax is invariant to weight scaling") {
  const Matrix frames = cluster_data({{0.0, 0.0}, {5.0, 5.0}}, 1.0, 80, 59);
  GmmModel model = gmm_fit(frames, 3).model;
  Rng rng(60);
  Matrix probes(32, 2);
  for (std::size_t i = 0; i < probes.size(); ++i) probes.data()[i] = 3.0 * rng.normal();
  const TokenizeResult before = gmm_tokenize(model, probes);
  for (double &w : model.weights) w *= 7.5;  // off the simplex on purpose
  const TokenizeResult after = gmm_tokenize(model, probes);
  CHECK(before.indices == after.indices);
}

TEST_CASE("gmm_tokenize: log-domain argmax equals linear-domain argmax") {
  const Matrix frames = cluster_data({{-1.0, 0.5}, {2.0, -0.5}}, 0.8, 60, 61);
  const GmmModel model = gmm_fit(frames, 3).model;
  Rng rng(62);
  for (int rep = 0; rep < 50; ++rep) {
    Matrix probe(1, 2);
    probe(0, 0) = 3.0 * rng.normal();
    probe(0, 1) = 3.0 * rng.normal();
    std::size_t linear_best = 0;
    double linear_score = -1.0;
    for (std::size_t c = 0; c < model.components(); ++c) {
      std::vector<double> x{probe(0, 0), probe(0, 1)};
      std::vector<double> mean(model.means.row(c).begin(), model.means.row(c).end());
      std::vector<double> var(model.variances.row(c).begin(),
                              model.variances.row(c).end());
      const double s = model.weights[c] *
                       std::exp(oracle::gaussian_logpdf_scalar(x, mean, var));
      if (s > linear_score) {
        linear_score = s;
        linear_best = c;
      }
    }
    CHECK(gmm_tokenize(model, probe).indices[0] == linear_best);
  }
}

TEST_CASE("gmm_tokenize: dimension mismatch") {
  const GmmModel model = gmm_fit(cluster_data({{0.0, 0.0}}, 1.0, 40, 63), 2).model;
  CHECK_THROWS_AS(gmm_tokenize(model, Matrix(1, 3)), ShapeError);
}

TEST_SUITE_END();
