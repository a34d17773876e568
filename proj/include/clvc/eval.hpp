// clvc/eval.hpp

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

#ifndef CLVC_EVAL_HPP_
#define CLVC_EVAL_HPP_

#include <map>
#include <string>
#include <vector>

#include "clvc/corpus.hpp"
#include "clvc/gmm.hpp"
#include "clvc/matrix.hpp"
#include "clvc/pipeline.hpp"

namespace clvc {

// Objective evaluation: mel-cepstral distortion against frame-aligned target
// truth, and GMM speaker classification of converted utterances.

// Per frame (10 sqrt(2) / ln 10) * sqrt(sum_{d >= d0} (a_d - b_d)^2) with
// d0 = 1 when skip_c0 (the energy-like coefficient is excluded by default),
// averaged over frames. Symmetric, zero iff equal.
double mcd(const Matrix &a, const Matrix &b, bool skip_c0 = true);

class SpeakerClassifier {
 public:
  SpeakerClassifier() = default;
  SpeakerClassifier(std::vector<std::string> speaker_ids, std::vector<GmmModel> models);

  // Speaker with the highest total log-likelihood over the frame set;
  // ties break to the lowest speaker index.
  std::size_t classify(const Matrix &frames) const;
  const std::string &classify_id(const Matrix &frames) const;

  const std::vector<std::string> &speaker_ids() const { return speaker_ids_; }
  const std::vector<GmmModel> &models() const { return models_; }

 private:
  std::vector<std::string> speaker_ids_;
  std::vector<GmmModel> models_;
};

// One GMM per speaker, fitted on that speaker's natural frames. Seeds are
// derived per speaker from config.seed. Requires at least 2 speakers.
SpeakerClassifier speaker_classifier_fit(
    const std::vector<std::pair<std::string, Matrix>> &corpora,
    std::size_t components, const GmmConfig &config = {});

struct UtteranceEval {
  std::string utterance_id;
  std::string source_speaker_id;
  std::string classified_as;
  double mcd_converted = 0.0;  // converted vs target truth
  double mcd_source = 0.0;     // unconverted source vs target truth
};

struct EvalReport {
  SystemKind system = SystemKind::kProposed;
  bool skip_c0 = true;
  std::string target_speaker_id;
  std::vector<UtteranceEval> utterances;
  double mean_mcd = 0.0;
  double mean_source_mcd = 0.0;
  double classification_accuracy = 0.0;  // converted classified as target
  std::map<std::string, std::string> config_echo;
  std::map<std::string, std::string> model_hashes;
};

// Converts every source utterance and scores it against the frame-aligned
// target truth (same index). Inputs are not mutated.
EvalReport evaluate(const VcSystem &system,
                    const std::vector<FeatureUtterance> &test_sources,
                    const std::vector<FeatureUtterance> &target_truth,
                    const SpeakerClassifier &classifier, bool skip_c0 = true);

// Lossless JSON round-trip for reports, plus a gnuplot-friendly table
// (one row per utterance).
std::string report_to_json(const EvalReport &report);
EvalReport report_from_json(const std::string &json_text);
std::string report_table(const EvalReport &report);

}  // namespace clvc

#endif  // CLVC_EVAL_HPP_
