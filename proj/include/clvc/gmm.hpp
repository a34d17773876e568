// clvc/gmm.hpp

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

#ifndef CLVC_GMM_HPP_
#define CLVC_GMM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clvc/matrix.hpp"

namespace clvc {

// Speaker-specific Gaussian mixture, used as a tokenizer: each input frame is
// replaced by the mean of the mixture component with the highest weighted
// likelihood. Scoring is done in the log domain throughout; at 40 dimensions
// the linear-domain density underflows to zero.

struct GmmConfig {
  std::size_t max_iters = 200;
  double tol = 1e-6;             // relative log-likelihood improvement
  std::size_t kmeans_iters = 10; // Lloyd refinement after k-means++ seeding
  bool diagonal = true;          // full covariance is not implemented
  std::uint64_t seed = 1;
};

struct GmmModel {
  static constexpr double kVarianceFloor = 1e-6;

  std::vector<double> weights;  // simplex: >= 0, sums to 1
  Matrix means;                 // components x D
  Matrix variances;             // components x D, diagonal, >= kVarianceFloor
  std::size_t feature_dim = 0;
  std::string target_speaker_id;
  GmmConfig config;

  std::size_t components() const { return weights.size(); }
  void validate() const;  // simplex/floor/shape invariants -> DataError
};

// Log of the diagonal-covariance Gaussian density:
//   -1/2 [ D ln(2 pi) + sum_d ln var_d + sum_d (x_d - mean_d)^2 / var_d ]
// Throws ConfigError if any variance is below the floor.
double gaussian_logpdf(std::span<const double> x, std::span<const double> mean,
                       std::span<const double> variance);

struct GmmFitResult {
  GmmModel model;
  std::vector<double> llh_trace;  // total data log-likelihood per EM iteration
};

// EM with diagonal covariances, initialized from seeded k-means++ centers
// plus Lloyd refinement. The log-likelihood trace is non-decreasing (within
// 1e-8). A component whose responsibility mass underflows is reinitialized
// from the data point with the largest per-coordinate variance and the event
// is logged to stderr. Requires n >= components.
GmmFitResult gmm_fit(const Matrix &frames, std::size_t components,
                     const GmmConfig &config = {}, std::string target_speaker_id = {});

struct TokenizeResult {
  Matrix frames;                    // selected component means, one per input frame
  std::vector<std::size_t> indices;
};

// argmax_i [ ln w_i + ln g(x | mean_i, var_i) ] per frame; ties break to the
// lowest component index.
TokenizeResult gmm_tokenize(const GmmModel &model, const Matrix &frames);

// log sum_i w_i g(x | mean_i, var_i), via logsumexp.
double gmm_frame_loglik(const GmmModel &model, std::span<const double> frame);

// Sum of gmm_frame_loglik over all rows.
double gmm_total_loglik(const GmmModel &model, const Matrix &frames);

}  // namespace clvc

#endif  // CLVC_GMM_HPP_
