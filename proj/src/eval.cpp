// clvc/eval.cpp

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

#include "clvc/eval.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "clvc/errors.hpp"
#include "clvc/rng.hpp"

namespace clvc {

double mcd(const Matrix &a, const Matrix &b, bool skip_c0) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("mcd: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                     "x" + std::to_string(b.cols()));
  }
  if (a.rows() == 0) return 0.0;
  const std::size_t d0 = skip_c0 ? 1 : 0;
  if (a.cols() <= d0) {
    throw ShapeError("mcd: no coefficients left after skipping c0");
  }
  const double k = 10.0 * std::sqrt(2.0) / std::log(10.0);
  double total = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = a.row(i);
    auto rb = b.row(i);
    double s = 0.0;
    for (std::size_t j = d0; j < a.cols(); ++j) {
      const double diff = ra[j] - rb[j];
      s += diff * diff;
    }
    total += k * std::sqrt(s);
  }
  return total / static_cast<double>(a.rows());
}

SpeakerClassifier::SpeakerClassifier(std::vector<std::string> speaker_ids,
                                     std::vector<GmmModel> models)
    : speaker_ids_(std::move(speaker_ids)), models_(std::move(models)) {
  if (speaker_ids_.size() != models_.size()) {
    throw ShapeError("SpeakerClassifier: ids/models count mismatch");
  }
  if (speaker_ids_.empty()) throw DataError("SpeakerClassifier: no speakers");
}

std::size_t SpeakerClassifier::classify(const Matrix &frames) const {
  std::size_t best = 0;
  double best_llh = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < models_.size(); ++s) {
    const double llh = gmm_total_loglik(models_[s], frames);
    if (llh > best_llh) {  // strict: ties keep the lowest speaker index
      best_llh = llh;
      best = s;
    }
  }
  return best;
}

const std::string &SpeakerClassifier::classify_id(const Matrix &frames) const {
  return speaker_ids_[classify(frames)];
}

SpeakerClassifier speaker_classifier_fit(
    const std::vector<std::pair<std::string, Matrix>> &corpora,
    std::size_t components, const GmmConfig &config) {
  if (corpora.size() < 2) {
    throw DataError("speaker_classifier_fit: need at least 2 speakers");
  }
  std::vector<std::string> ids;
  std::vector<GmmModel> models;
  for (std::size_t s = 0; s < corpora.size(); ++s) {
    GmmConfig speaker_config = config;
    speaker_config.seed = Rng::derive(config.seed, 0xc1 + s);
    models.push_back(
        gmm_fit(corpora[s].second, components, speaker_config, corpora[s].first)
            .model);
    ids.push_back(corpora[s].first);
  }
  return SpeakerClassifier(std::move(ids), std::move(models));
}

EvalReport evaluate(const VcSystem &system,
                    const std::vector<FeatureUtterance> &test_sources,
                    const std::vector<FeatureUtterance> &target_truth,
                    const SpeakerClassifier &classifier, bool skip_c0) {
  if (test_sources.size() != target_truth.size()) {
    throw DataError("evaluate: " + std::to_string(test_sources.size()) +
                    " sources vs " + std::to_string(target_truth.size()) +
                    " truth utterances");
  }
  if (test_sources.empty()) throw DataError("evaluate: nothing to evaluate");

  EvalReport report;
  report.system = system.kind;
  report.skip_c0 = skip_c0;
  report.target_speaker_id = system.target_profile.speaker_id;

  double sum_mcd = 0.0;
  double sum_source_mcd = 0.0;
  std::size_t classified_as_target = 0;
  for (std::size_t i = 0; i < test_sources.size(); ++i) {
    const FeatureUtterance &src = test_sources[i];
    const FeatureUtterance &truth = target_truth[i];
    if (src.num_frames() != truth.num_frames()) {
      throw DataError("evaluate: " + src.utterance_id +
                      " is not frame-aligned with its target truth");
    }
    const FeatureUtterance converted = convert(system, src);

    UtteranceEval ue;
    ue.utterance_id = src.utterance_id;
    ue.source_speaker_id = src.speaker_id;
    ue.mcd_converted = mcd(converted.frames, truth.frames, skip_c0);
    ue.mcd_source = mcd(src.frames, truth.frames, skip_c0);
    ue.classified_as = classifier.classify_id(converted.frames);
    if (ue.classified_as == report.target_speaker_id) ++classified_as_target;
    sum_mcd += ue.mcd_converted;
    sum_source_mcd += ue.mcd_source;
    report.utterances.push_back(std::move(ue));
  }
  const double n = static_cast<double>(report.utterances.size());
  report.mean_mcd = sum_mcd / n;
  report.mean_source_mcd = sum_source_mcd / n;
  report.classification_accuracy = static_cast<double>(classified_as_target) / n;
  return report;
}

std::string report_to_json(const EvalReport &report) {
  nlohmann::json j;
  j["system"] = to_string(report.system);
  j["skip_c0"] = report.skip_c0;
  j["target_speaker_id"] = report.target_speaker_id;
  j["mean_mcd_db"] = report.mean_mcd;
  j["mean_source_mcd_db"] = report.mean_source_mcd;
  j["classification_accuracy"] = report.classification_accuracy;
  j["config"] = report.config_echo;
  j["model_hashes"] = report.model_hashes;
  j["utterances"] = nlohmann::json::array();
  for (const UtteranceEval &ue : report.utterances) {
    j["utterances"].push_back({{"utterance_id", ue.utterance_id},
                               {"source_speaker_id", ue.source_speaker_id},
                               {"classified_as", ue.classified_as},
                               {"mcd_db", ue.mcd_converted},
                               {"mcd_source_db", ue.mcd_source}});
  }
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(std::string("report parse error: ") + e.what());
  }
  try {
    EvalReport report;
    report.system = system_kind_from_string(j.at("system").get<std::string>());
    report.skip_c0 = j.at("skip_c0").get<bool>();
    report.target_speaker_id = j.at("target_speaker_id").get<std::string>();
    report.mean_mcd = j.at("mean_mcd_db").get<double>();
    report.mean_source_mcd = j.at("mean_source_mcd_db").get<double>();
    report.classification_accuracy = j.at("classification_accuracy").get<double>();
    report.config_echo =
        j.at("config").get<std::map<std::string, std::string>>();
    report.model_hashes =
        j.at("model_hashes").get<std::map<std::string, std::string>>();
    for (const auto &u : j.at("utterances")) {
      UtteranceEval ue;
      ue.utterance_id = u.at("utterance_id").get<std::string>();
      ue.source_speaker_id = u.at("source_speaker_id").get<std::string>();
      ue.classified_as = u.at("classified_as").get<std::string>();
      ue.mcd_converted = u.at("mcd_db").get<double>();
      ue.mcd_source = u.at("mcd_source_db").get<double>();
      report.utterances.push_back(std::move(ue));
    }
    return report;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("report field error: ") + e.what());
  }
}

std::string report_table(const EvalReport &report) {
  std::ostringstream out;
  out << "# system=" << to_string(report.system)
      << " target=" << report.target_speaker_id << "\n";
  out << "# utterance source mcd_db mcd_source_db classified_as\n";
  for (const UtteranceEval &ue : report.utterances) {
    out << ue.utterance_id << ' ' << ue.source_speaker_id << ' ' << ue.mcd_converted
        << ' ' << ue.mcd_source << ' ' << ue.classified_as << "\n";
  }
  out << "# mean " << report.mean_mcd << " " << report.mean_source_mcd
      << " accuracy " << report.classification_accuracy << "\n";
  return out.str();
}

}  // namespace clvc
