// clvc/gmm.cpp

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

#include "clvc/gmm.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

#include "clvc/errors.hpp"
#include "clvc/rng.hpp"

namespace clvc {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)

double sq(double x) { return x * x; }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += sq(a[j] - b[j]);
  return s;
}

// k-means++ seeding followed by a few Lloyd iterations; gives EM a stable,
// deterministic start even at 128 components.
Matrix kmeans_init(const Matrix &frames, std::size_t k, std::size_t lloyd_iters,
                   Rng &rng) {
  const std::size_t n = frames.rows();
  const std::size_t d = frames.cols();
  Matrix centers(k, d);
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  chosen.push_back(rng.index(n));
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    auto last = frames.row(chosen.back());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i], squared_distance(frames.row(i), last));
      total += dist2[i];
    }
    std::size_t pick;
    if (total > 0.0) {
      const double u = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dist2[i];
        if (acc >= u) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.index(n);  // all remaining points coincide with a center
    }
    chosen.push_back(pick);
  }
  for (std::size_t c = 0; c < k; ++c) {
    auto src = frames.row(chosen[c]);
    auto dst = centers.row(c);
    for (std::size_t j = 0; j < d; ++j) dst[j] = src[j];
  }

  std::vector<std::size_t> assign(n, 0);
  for (std::size_t it = 0; it < lloyd_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d2 = squared_distance(frames.row(i), centers.row(c));
        if (d2 < best) {
          best = d2;
          best_c = c;
        }
      }
      assign[i] = best_c;
    }
    Matrix sums(k, d);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = frames.row(i);
      auto s = sums.row(assign[i]);
      for (std::size_t j = 0; j < d; ++j) s[j] += r[j];
      ++counts[assign[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its center
      auto dst = centers.row(c);
      for (std::size_t j = 0; j < d; ++j) {
        dst[j] = sums(c, j) / static_cast<double>(counts[c]);
      }
    }
  }
  return centers;
}

// Index of the frame with the largest per-coordinate sample variance; used
// to reseed a component whose responsibility mass underflowed.
std::size_t highest_variance_frame(const Matrix &frames) {
  std::size_t best_i = 0;
  double best_v = -1.0;
  for (std::size_t i = 0; i < frames.rows(); ++i) {
    auto r = frames.row(i);
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    double var = 0.0;
    for (double v : r) var += sq(v - mean);
    var /= static_cast<double>(r.size());
    if (var > best_v) {
      best_v = var;
      best_i = i;
    }
  }
  return best_i;
}

}  // namespace

void GmmModel::validate() const {
  const std::size_t k = weights.size();
  if (k == 0) throw DataError("GmmModel: no components");
  if (means.rows() != k || variances.rows() != k || means.cols() != feature_dim ||
      variances.cols() != feature_dim) {
    throw DataError("GmmModel: parameter shapes do not match");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DataError("GmmModel: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DataError("GmmModel: weights do not sum to 1");
  for (std::size_t i = 0; i < variances.size(); ++i) {
    if (variances.data()[i] < kVarianceFloor) {
      throw DataError("GmmModel: variance below floor");
    }
  }
}

double gaussian_logpdf(std::span<const double> x, std::span<const double> mean,
                       std::span<const double> variance) {
  const std::size_t d = x.size();
  if (mean.size() != d || variance.size() != d) {
    throw ShapeError("gaussian_logpdf: dimension mismatch");
  }
  double log_det = 0.0;
  double maha = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    if (variance[j] < GmmModel::kVarianceFloor) {
      throw ConfigError("gaussian_logpdf: variance below floor at dim " +
                        std::to_string(j));
    }
    log_det += std::log(variance[j]);
    maha += sq(x[j] - mean[j]) / variance[j];
  }
  return -0.5 * (static_cast<double>(d) * kLog2Pi + log_det + maha);
}

GmmFitResult gmm_fit(const Matrix &frames, std::size_t components,
                     const GmmConfig &config, std::string target_speaker_id) {
  const std::size_t n = frames.rows();
  const std::size_t d = frames.cols();
  if (components == 0) throw ConfigError("gmm_fit: components must be >= 1");
  if (!config.diagonal) {
    throw ConfigError("gmm_fit: only diagonal covariances are implemented");
  }
  if (n < components) {
    throw DataError("gmm_fit: " + std::to_string(n) + " frames for " +
                    std::to_string(components) + " components");
  }

  Rng rng(Rng::derive(config.seed, 0x676d6d));
  GmmModel model;
  model.feature_dim = d;
  model.target_speaker_id = std::move(target_speaker_id);
  model.config = config;
  model.means = kmeans_init(frames, components, config.kmeans_iters, rng);
  model.variances = Matrix(components, d);
  model.weights.assign(components, 0.0);

  // Global per-dimension variance, the fallback for starved components.
  std::vector<double> global_mean(d, 0.0), global_var(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = frames.row(i);
    for (std::size_t j = 0; j < d; ++j) global_mean[j] += r[j];
  }
  for (std::size_t j = 0; j < d; ++j) global_mean[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = frames.row(i);
    for (std::size_t j = 0; j < d; ++j) global_var[j] += sq(r[j] - global_mean[j]);
  }
  for (std::size_t j = 0; j < d; ++j) {
    global_var[j] = std::max(global_var[j] / static_cast<double>(n),
                             GmmModel::kVarianceFloor);
  }

  // Hard-assignment statistics from the k-means partition seed the mixture.
  {
    std::vector<std::size_t> assign(n, 0);
    std::vector<std::size_t> counts(components, 0);
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < components; ++c) {
        const double d2 = squared_distance(frames.row(i), model.means.row(c));
        if (d2 < best) {
          best = d2;
          best_c = c;
        }
      }
      assign[i] = best_c;
      ++counts[best_c];
    }
    Matrix var_acc(components, d);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = frames.row(i);
      auto m = model.means.row(assign[i]);
      auto v = var_acc.row(assign[i]);
      for (std::size_t j = 0; j < d; ++j) v[j] += sq(r[j] - m[j]);
    }
    double wsum = 0.0;
    for (std::size_t c = 0; c < components; ++c) {
      model.weights[c] = static_cast<double>(std::max<std::size_t>(counts[c], 1));
      wsum += model.weights[c];
      auto v = model.variances.row(c);
      for (std::size_t j = 0; j < d; ++j) {
        v[j] = counts[c] > 0
                   ? std::max(var_acc(c, j) / static_cast<double>(counts[c]),
                              GmmModel::kVarianceFloor)
                   : global_var[j];
      }
    }
    for (double &w : model.weights) w /= wsum;
  }

  GmmFitResult result;
  std::vector<double> log_w(components);
  std::vector<double> lp(components);
  std::vector<double> resp_sum(components);
  Matrix mean_acc(components, d);
  Matrix sq_acc(components, d);

  double prev_llh = -std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    for (std::size_t c = 0; c < components; ++c) {
      log_w[c] = model.weights[c] > 0.0 ? std::log(model.weights[c])
                                        : -std::numeric_limits<double>::infinity();
    }
    std::fill(resp_sum.begin(), resp_sum.end(), 0.0);
    mean_acc = Matrix(components, d);
    sq_acc = Matrix(components, d);

    // E-step in the log domain; also accumulates the data log-likelihood of
    // the parameters entering this iteration.
    double llh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto x = frames.row(i);
      double mx = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < components; ++c) {
        lp[c] = log_w[c] +
                gaussian_logpdf(x, model.means.row(c), model.variances.row(c));
        mx = std::max(mx, lp[c]);
      }
      double z = 0.0;
      for (std::size_t c = 0; c < components; ++c) z += std::exp(lp[c] - mx);
      const double lse = mx + std::log(z);
      llh += lse;
      for (std::size_t c = 0; c < components; ++c) {
        const double r = std::exp(lp[c] - lse);
        if (r == 0.0) continue;
        resp_sum[c] += r;
        auto ma = mean_acc.row(c);
        auto sa = sq_acc.row(c);
        for (std::size_t j = 0; j < d; ++j) {
          ma[j] += r * x[j];
          sa[j] += r * x[j] * x[j];
        }
      }
    }
    if (!std::isfinite(llh)) {
      throw TrainingError("gmm_fit: non-finite log-likelihood at iteration " +
                          std::to_string(iter));
    }
    result.llh_trace.push_back(llh);

    // M-step.
    bool reinitialized = false;
    for (std::size_t c = 0; c < components; ++c) {
      if (resp_sum[c] < 1e-12 * static_cast<double>(n)) {
        const std::size_t pick = highest_variance_frame(frames);
        std::cerr << "gmm_fit: component " << c << " starved at iteration " << iter
                  << ", reseeding from frame " << pick << "\n";
        auto m = model.means.row(c);
        auto v = model.variances.row(c);
        auto src = frames.row(pick);
        for (std::size_t j = 0; j < d; ++j) {
          m[j] = src[j];
          v[j] = global_var[j];
        }
        model.weights[c] = 1.0 / static_cast<double>(components);
        reinitialized = true;
        continue;
      }
      const double inv = 1.0 / resp_sum[c];
      model.weights[c] = resp_sum[c] / static_cast<double>(n);
      auto m = model.means.row(c);
      auto v = model.variances.row(c);
      auto ma = mean_acc.row(c);
      auto sa = sq_acc.row(c);
      for (std::size_t j = 0; j < d; ++j) {
        m[j] = ma[j] * inv;
        v[j] = std::max(sa[j] * inv - sq(m[j]), GmmModel::kVarianceFloor);
      }
    }
    double wsum = std::accumulate(model.weights.begin(), model.weights.end(), 0.0);
    for (double &w : model.weights) w /= wsum;

    if (!reinitialized && iter > 0) {
      const double rel =
          (llh - prev_llh) / std::max(1.0, std::abs(prev_llh));
      if (rel < config.tol) break;
    }
    prev_llh = llh;
  }

  result.model = std::move(model);
  result.model.validate();
  return result;
}

TokenizeResult gmm_tokenize(const GmmModel &model, const Matrix &frames) {
  if (frames.cols() != model.feature_dim) {
    throw ShapeError("gmm_tokenize: frame dim " + std::to_string(frames.cols()) +
                     " vs model dim " + std::to_string(model.feature_dim));
  }
  const std::size_t k = model.components();
  std::vector<double> log_w(k);
  for (std::size_t c = 0; c < k; ++c) {
    log_w[c] = model.weights[c] > 0.0 ? std::log(model.weights[c])
                                      : -std::numeric_limits<double>::infinity();
  }
  TokenizeResult out;
  out.frames = Matrix(frames.rows(), model.feature_dim);
  out.indices.resize(frames.rows());
  for (std::size_t i = 0; i < frames.rows(); ++i) {
    auto x = frames.row(i);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double lp =
          log_w[c] + gaussian_logpdf(x, model.means.row(c), model.variances.row(c));
      if (lp > best) {  // strict: ties keep the lowest index
        best = lp;
        best_c = c;
      }
    }
    out.indices[i] = best_c;
    auto src = model.means.row(best_c);
    auto dst = out.frames.row(i);
    for (std::size_t j = 0; j < model.feature_dim; ++j) dst[j] = src[j];
  }
  return out;
}

double gmm_frame_loglik(const GmmModel &model, std::span<const double> frame) {
  const std::size_t k = model.components();
  double mx = -std::numeric_limits<double>::infinity();
  std::vector<double> lp(k);
  for (std::size_t c = 0; c < k; ++c) {
    const double lw = model.weights[c] > 0.0
                          ? std::log(model.weights[c])
                          : -std::numeric_limits<double>::infinity();
    lp[c] = lw + gaussian_logpdf(frame, model.means.row(c), model.variances.row(c));
    mx = std::max(mx, lp[c]);
  }
  double z = 0.0;
  for (std::size_t c = 0; c < k; ++c) z += std::exp(lp[c] - mx);
  return mx + std::log(z);
}

double gmm_total_loglik(const GmmModel &model, const Matrix &frames) {
  if (frames.cols() != model.feature_dim) {
    throw ShapeError("gmm_total_loglik: frame dim mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < frames.rows(); ++i) {
    s += gmm_frame_loglik(model, frames.row(i));
  }
  return s;
}

}  // namespace clvc
