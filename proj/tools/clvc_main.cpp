// tools/clvc_main.cpp

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

// clvc command line: gen-corpus, train-dae, train-dnn, train-gmm, convert,
// evaluate. Every command writes one artifact plus a .runlog.json with the
// resolved configuration and training traces; nothing is overwritten without
// --force. Exit codes: 0 ok, 1 usage, 2 data/format, 3 numeric/training.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clvc/corpus.hpp"
#include "clvc/dae.hpp"
#include "clvc/errors.hpp"
#include "clvc/eval.hpp"
#include "clvc/gmm.hpp"
#include "clvc/mapper.hpp"
#include "clvc/model_io.hpp"
#include "clvc/pipeline.hpp"
#include "clvc/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::size_t> parse_widths(const std::string &s) {
  std::vector<std::size_t> out;
  for (const std::string &tok : split_list(s)) {
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(tok)));
    } catch (const std::exception &) {
      throw clvc::ConfigError("invalid width '" + tok + "' in '" + s + "'");
    }
  }
  if (out.empty()) throw clvc::ConfigError("empty width list '" + s + "'");
  return out;
}

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

void require_writable(const fs::path &path, bool force) {
  if (fs::exists(path) && !force) {
    throw clvc::ConfigError(path.string() + " exists; pass --force to overwrite");
  }
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw clvc::DataError("cannot write " + path.string());
  out << text;
  if (!out) throw clvc::DataError("error writing " + path.string());
}

void write_runlog(const fs::path &artifact, const json &log) {
  fs::path p = artifact;
  p += ".runlog.json";
  write_text(p, log.dump(2) + "\n");
}

// Shared corpus selection: --manifest FILE or --corpus DIR (manifest.tsv
// inside). Returns the manifest path.
struct CorpusArgs {
  std::string manifest;
  std::string corpus_dir;

  fs::path manifest_path() const {
    if (!manifest.empty()) return manifest;
    if (!corpus_dir.empty()) return fs::path(corpus_dir) / "manifest.tsv";
    throw clvc::ConfigError("one of --manifest or --corpus is required");
  }
  void add_options(CLI::App *cmd) {
    cmd->add_option("--manifest", manifest, "Corpus manifest file");
    cmd->add_option("--corpus", corpus_dir,
                    "Corpus directory containing manifest.tsv");
  }
};

// Speakers with at least one manifest entry, in first-appearance order.
std::vector<std::string> manifest_speakers(const std::vector<clvc::ManifestEntry> &entries) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto &e : entries) {
    if (seen.insert(e.speaker_id).second) out.push_back(e.speaker_id);
  }
  return out;
}

std::vector<std::string> default_source_speakers(
    const std::vector<clvc::ManifestEntry> &entries, const std::string &target) {
  std::vector<std::string> out;
  for (const std::string &s : manifest_speakers(entries)) {
    if (s != target && s.rfind("dae", 0) != 0) out.push_back(s);
  }
  return out;
}

int cmd_gen_corpus(const std::string &out_dir, std::uint64_t seed,
                   std::size_t feature_dim, std::size_t dae_speakers,
                   std::size_t vc_speakers, std::size_t phones,
                   std::size_t utterances, std::size_t train_count,
                   std::size_t ap_bands, std::size_t min_frames,
                   std::size_t max_frames, double noise, double proto_scale,
                   double jitter, double unvoiced, bool force) {
  clvc::CorpusConfig config;
  config.master_seed = seed;
  config.feature_dim = feature_dim;
  config.phones = phones;
  config.utterances_per_speaker = utterances;
  config.train_per_speaker = train_count;
  config.ap_bands = ap_bands;
  config.min_frames = min_frames;
  config.max_frames = max_frames;
  config.proto_scale = proto_scale;
  config.jitter_sigma = jitter;
  config.unvoiced_fraction = unvoiced;

  const auto specs =
      clvc::default_speaker_specs(dae_speakers, vc_speakers, noise, config);
  // Generate fully in memory before touching the filesystem, so an invalid
  // configuration leaves no partial corpus behind.
  const clvc::SyntheticCorpus corpus = clvc::generate_corpus(specs, config);

  const fs::path root(out_dir);
  const fs::path manifest_path = root / "manifest.tsv";
  require_writable(manifest_path, force);
  fs::create_directories(root);
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    const fs::path path = root / corpus.manifest[i].path;
    fs::create_directories(path.parent_path());
    clvc::write_features(corpus.utterances[i], path);
  }
  clvc::write_manifest(corpus.manifest, manifest_path);

  std::string phones_text = "# utterance_id\tper-frame phone ids\n";
  for (const auto &[utt, labels] : corpus.phone_labels) {
    phones_text += utt + "\t";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) phones_text += ' ';
      phones_text += std::to_string(labels[i]);
    }
    phones_text += '\n';
  }
  write_text(root / "phones.tsv", phones_text);

  json log;
  log["command"] = "gen-corpus";
  log["seed"] = seed;
  log["config"] = {{"feature_dim", feature_dim},
                   {"dae_speakers", dae_speakers},
                   {"vc_speakers", vc_speakers},
                   {"phones", phones},
                   {"utterances_per_speaker", utterances},
                   {"train_per_speaker", train_count},
                   {"ap_bands", ap_bands},
                   {"min_frames", min_frames},
                   {"max_frames", max_frames},
                   {"noise_sigma", noise},
                   {"proto_scale", proto_scale},
                   {"jitter_sigma", jitter},
                   {"unvoiced_fraction", unvoiced}};
  log["utterances_written"] = corpus.utterances.size();
  write_text(root / "runlog.json", log.dump(2) + "\n");

  std::cout << "wrote " << corpus.utterances.size() << " utterances under " << out_dir
            << "\n";
  return 0;
}

int cmd_train_dae(const CorpusArgs &corpus_args, const std::string &out,
                  const std::string &speakers_flag, const std::string &hidden_widths,
                  std::size_t bottleneck, double lr, std::size_t batch,
                  std::size_t max_epochs, std::size_t patience, double val_fraction,
                  std::uint64_t seed, bool untied, bool force) {
  const fs::path manifest_path = corpus_args.manifest_path();
  require_writable(out, force);
  const auto entries = clvc::read_manifest(manifest_path);

  std::vector<std::string> speakers = split_list(speakers_flag);
  if (speakers.empty()) {
    for (const std::string &s : manifest_speakers(entries)) {
      if (s.rfind("dae", 0) == 0) speakers.push_back(s);
    }
  }
  if (speakers.empty()) {
    throw clvc::DataError("no encoder-training speakers; pass --speakers");
  }
  clvc::ManifestFilter filter;
  filter.speakers = speakers;
  filter.split = "train";
  const auto corpus =
      clvc::load_corpus(manifest_path, clvc::filter_manifest(entries, filter));
  if (corpus.empty()) throw clvc::DataError("selected training corpus is empty");

  clvc::DaeConfig config;
  config.hidden_widths = parse_widths(hidden_widths);
  config.bottleneck = bottleneck;
  config.tied = !untied;
  config.learning_rate = lr;
  config.batch = batch;
  config.max_epochs = max_epochs;
  config.patience = patience;
  config.validation_fraction = val_fraction;

  const std::size_t feature_dim = corpus.front().feature_dim();
  const clvc::DaeModel init = clvc::dae_build(feature_dim, seed, config);
  const clvc::DaeTrainResult result = clvc::dae_train(init, corpus, config);
  clvc::save_dae(result.model, out);

  json log;
  log["command"] = "train-dae";
  log["seed"] = seed;
  log["config"] = {{"speakers", speakers},
                   {"hidden_widths", config.hidden_widths},
                   {"bottleneck", result.model.bottleneck_dim()},
                   {"tied", config.tied},
                   {"lr", lr},
                   {"batch", batch},
                   {"max_epochs", max_epochs},
                   {"patience", patience},
                   {"validation_fraction", val_fraction},
                   {"feature_dim", feature_dim}};
  log["best_epoch"] = result.best_epoch;
  log["dae_hash"] = hash_hex(clvc::dae_content_hash(result.model));
  json trace = json::array();
  for (const auto &e : result.trace) {
    trace.push_back({{"train", e.train}, {"validation", e.validation}});
  }
  log["trace"] = trace;
  write_runlog(out, log);

  std::cout << "trained encoder on " << speakers.size() << " speakers, best epoch "
            << result.best_epoch << ", saved to " << out << "\n";
  return 0;
}

int cmd_train_dnn(const CorpusArgs &corpus_args, const std::string &dae_path,
                  const std::string &target, const std::string &out, double lr,
                  std::size_t epochs, std::size_t batch, std::uint64_t seed,
                  bool force) {
  const fs::path manifest_path = corpus_args.manifest_path();
  require_writable(out, force);
  const auto entries = clvc::read_manifest(manifest_path);
  clvc::ManifestFilter filter;
  filter.speakers = {target};
  filter.split = "train";
  const auto corpus =
      clvc::load_corpus(manifest_path, clvc::filter_manifest(entries, filter));
  if (corpus.empty()) {
    throw clvc::DataError("no training utterances for target '" + target + "'");
  }

  const clvc::DaeModel dae = clvc::load_dae(dae_path);
  clvc::MapperConfig config;
  config.learning_rate = lr;
  config.epochs = epochs;
  config.batch = batch;
  config.seed = seed;
  std::vector<double> trace;
  const clvc::VcSystem system = clvc::train_proposed(dae, corpus, config, &trace);

  clvc::MapperArtifact artifact;
  artifact.mapper = *system.mapper;
  artifact.profile = system.target_profile;
  artifact.dae_hash = clvc::dae_content_hash(dae);
  clvc::save_mapper(artifact, out);

  const clvc::Matrix bottleneck = [&] {
    std::vector<clvc::Matrix> blocks;
    for (const auto &utt : corpus) blocks.push_back(utt.frames);
    return clvc::dae_encode(dae, clvc::vstack(blocks));
  }();

  json log;
  log["command"] = "train-dnn";
  log["seed"] = seed;
  log["config"] = {{"target", target},
                   {"lr", lr},
                   {"epochs", epochs},
                   {"batch", batch},
                   {"dae", dae_path}};
  log["dae_hash"] = hash_hex(artifact.dae_hash);
  log["training_pairs"] = bottleneck.rows();
  log["mean_voiced_f0"] = system.target_profile.mean_voiced_f0;
  log["trace"] = trace;
  write_runlog(out, log);

  std::cout << "trained mapper for " << target << " on " << bottleneck.rows()
            << " frames, saved to " << out << "\n";
  return 0;
}

int cmd_train_gmm(const CorpusArgs &corpus_args, const std::string &target,
                  const std::string &out, std::size_t components,
                  std::size_t max_iters, double tol, std::uint64_t seed, bool force) {
  const fs::path manifest_path = corpus_args.manifest_path();
  require_writable(out, force);
  const auto entries = clvc::read_manifest(manifest_path);
  clvc::ManifestFilter filter;
  filter.speakers = {target};
  filter.split = "train";
  const auto corpus =
      clvc::load_corpus(manifest_path, clvc::filter_manifest(entries, filter));
  if (corpus.empty()) {
    throw clvc::DataError("no training utterances for target '" + target + "'");
  }

  clvc::GmmConfig config;
  config.max_iters = max_iters;
  config.tol = tol;
  config.seed = seed;
  std::vector<double> trace;
  const clvc::VcSystem system = clvc::train_baseline(corpus, components, config, &trace);

  clvc::GmmArtifact artifact;
  artifact.gmm = *system.gmm;
  artifact.profile = system.target_profile;
  clvc::save_gmm(artifact, out);

  json log;
  log["command"] = "train-gmm";
  log["seed"] = seed;
  log["config"] = {{"target", target},
                   {"components", components},
                   {"max_iters", max_iters},
                   {"tol", tol}};
  log["mean_voiced_f0"] = system.target_profile.mean_voiced_f0;
  log["llh_trace"] = trace;
  write_runlog(out, log);

  std::cout << "trained " << components << "-component tokenizer for " << target
            << ", saved to " << out << "\n";
  return 0;
}

struct SystemArgs {
  std::string system;
  std::string dae_path;
  std::string mapper_path;
  std::string gmm_path;

  void add_options(CLI::App *cmd) {
    cmd->add_option("--system", system, "Conversion system: proposed|gmm")->required();
    cmd->add_option("--dae", dae_path, "Encoder model file (proposed)");
    cmd->add_option("--mapper", mapper_path, "Mapper model file (proposed)");
    cmd->add_option("--gmm", gmm_path, "Tokenizer model file (gmm)");
  }

  clvc::VcSystem load(std::map<std::string, std::string> *hashes) const {
    const clvc::SystemKind kind = clvc::system_kind_from_string(system);
    if (kind == clvc::SystemKind::kProposed) {
      if (dae_path.empty() || mapper_path.empty()) {
        throw clvc::ConfigError("--system proposed requires --dae and --mapper");
      }
      clvc::VcSystem sys = clvc::load_system_proposed(dae_path, mapper_path);
      if (hashes) {
        (*hashes)["dae"] = hash_hex(clvc::dae_content_hash(*sys.dae));
      }
      return sys;
    }
    if (gmm_path.empty()) {
      throw clvc::ConfigError("--system gmm requires --gmm");
    }
    clvc::VcSystem sys = clvc::load_system_baseline(gmm_path);
    return sys;
  }
};

int cmd_convert(const CorpusArgs &corpus_args, const SystemArgs &system_args,
                const std::string &sources_flag, const std::string &split,
                const std::string &out_dir, bool force) {
  const fs::path manifest_path = corpus_args.manifest_path();
  const fs::path root(out_dir);
  const fs::path out_manifest = root / "manifest.tsv";
  require_writable(out_manifest, force);

  std::map<std::string, std::string> hashes;
  const clvc::VcSystem system = system_args.load(&hashes);
  const std::string &target = system.target_profile.speaker_id;

  const auto entries = clvc::read_manifest(manifest_path);
  std::vector<std::string> sources = split_list(sources_flag);
  if (sources.empty()) sources = default_source_speakers(entries, target);
  if (sources.empty()) throw clvc::DataError("no source speakers to convert");

  clvc::ManifestFilter filter;
  filter.speakers = sources;
  filter.split = split;
  const auto selected = clvc::filter_manifest(entries, filter);
  if (selected.empty()) throw clvc::DataError("no utterances match the selection");
  const auto corpus = clvc::load_corpus(manifest_path, selected);

  fs::create_directories(root);
  std::vector<clvc::ManifestEntry> out_entries;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const clvc::FeatureUtterance converted = clvc::convert(system, corpus[i]);
    clvc::ManifestEntry entry;
    entry.speaker_id = converted.speaker_id;
    entry.utterance_id = converted.utterance_id;
    entry.path = corpus[i].speaker_id + "-to-" + target + "/" +
                 converted.utterance_id + ".cvcf";
    entry.split = selected[i].split;
    entry.extra["source"] = corpus[i].speaker_id;
    entry.extra["system"] = clvc::to_string(system.kind);
    for (const auto &[k, v] : hashes) entry.extra[k + "_hash"] = v;
    const fs::path path = root / entry.path;
    fs::create_directories(path.parent_path());
    clvc::write_features(converted, path);
    out_entries.push_back(std::move(entry));
  }
  clvc::write_manifest(out_entries, out_manifest);

  json log;
  log["command"] = "convert";
  log["config"] = {{"system", system_args.system},
                   {"sources", sources},
                   {"split", split},
                   {"target", target}};
  log["model_hashes"] = hashes;
  log["utterances_converted"] = out_entries.size();
  write_runlog(out_manifest, log);

  std::cout << "converted " << out_entries.size() << " utterances to " << target
            << " under " << out_dir << "\n";
  return 0;
}

int cmd_evaluate(const CorpusArgs &corpus_args, const SystemArgs &system_args,
                 const std::string &sources_flag, const std::string &split,
                 std::size_t classifier_components, std::size_t classifier_max_iters,
                 std::uint64_t seed, const std::string &report_path,
                 const std::string &table_path, bool with_c0, bool force) {
  const fs::path manifest_path = corpus_args.manifest_path();
  require_writable(report_path, force);
  if (!table_path.empty()) require_writable(table_path, force);

  std::map<std::string, std::string> hashes;
  const clvc::VcSystem system = system_args.load(&hashes);
  const std::string &target = system.target_profile.speaker_id;

  const auto entries = clvc::read_manifest(manifest_path);
  std::vector<std::string> sources = split_list(sources_flag);
  if (sources.empty()) sources = default_source_speakers(entries, target);
  if (sources.empty()) throw clvc::DataError("no source speakers to evaluate");

  // Frame-aligned truth: the target's own rendering of each test utterance.
  clvc::ManifestFilter truth_filter;
  truth_filter.speakers = {target};
  truth_filter.split = split;
  const auto truth_corpus =
      clvc::load_corpus(manifest_path, clvc::filter_manifest(entries, truth_filter));
  std::map<std::string, const clvc::FeatureUtterance *> truth_by_id;
  for (const auto &utt : truth_corpus) truth_by_id[utt.utterance_id] = &utt;

  clvc::ManifestFilter source_filter;
  source_filter.speakers = sources;
  source_filter.split = split;
  const auto source_corpus =
      clvc::load_corpus(manifest_path, clvc::filter_manifest(entries, source_filter));
  if (source_corpus.empty()) throw clvc::DataError("no test utterances selected");

  std::vector<clvc::FeatureUtterance> test_sources;
  std::vector<clvc::FeatureUtterance> target_truth;
  for (const auto &utt : source_corpus) {
    const auto it = truth_by_id.find(utt.utterance_id);
    if (it == truth_by_id.end()) {
      throw clvc::DataError("no parallel target rendering for " + utt.utterance_id);
    }
    test_sources.push_back(utt);
    target_truth.push_back(*it->second);
  }

  // Classifier over natural training frames: target first, then sources.
  std::vector<std::pair<std::string, clvc::Matrix>> classifier_corpora;
  std::vector<std::string> classifier_speakers = {target};
  classifier_speakers.insert(classifier_speakers.end(), sources.begin(), sources.end());
  for (const std::string &speaker : classifier_speakers) {
    clvc::ManifestFilter f;
    f.speakers = {speaker};
    f.split = "train";
    const auto natural =
        clvc::load_corpus(manifest_path, clvc::filter_manifest(entries, f));
    if (natural.empty()) {
      throw clvc::DataError("no natural training frames for " + speaker);
    }
    std::vector<clvc::Matrix> blocks;
    for (const auto &utt : natural) blocks.push_back(utt.frames);
    classifier_corpora.emplace_back(speaker, clvc::vstack(blocks));
  }
  clvc::GmmConfig classifier_config;
  classifier_config.seed = seed;
  classifier_config.max_iters = classifier_max_iters;
  const clvc::SpeakerClassifier classifier =
      clvc::speaker_classifier_fit(classifier_corpora, classifier_components,
                                   classifier_config);

  clvc::EvalReport report =
      clvc::evaluate(system, test_sources, target_truth, classifier, !with_c0);
  report.model_hashes = hashes;
  report.config_echo = {{"split", split},
                        {"classifier_components", std::to_string(classifier_components)},
                        {"classifier_seed", std::to_string(seed)},
                        {"system", system_args.system},
                        {"target", target}};

  write_text(report_path, clvc::report_to_json(report));
  if (!table_path.empty()) write_text(table_path, clvc::report_table(report));

  json log;
  log["command"] = "evaluate";
  log["seed"] = seed;
  log["config"] = report.config_echo;
  log["mean_mcd_db"] = report.mean_mcd;
  log["mean_source_mcd_db"] = report.mean_source_mcd;
  log["classification_accuracy"] = report.classification_accuracy;
  write_runlog(report_path, log);

  std::cout << "system " << clvc::to_string(report.system) << ": mean MCD "
            << report.mean_mcd << " dB (source " << report.mean_source_mcd
            << " dB), target classification " << report.classification_accuracy
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"clvc: cross-lingual voice conversion toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  // gen-corpus
  auto *gen = app.add_subcommand("gen-corpus", "Generate a synthetic corpus");
  std::string gen_out;
  std::uint64_t gen_seed = 1;
  std::size_t gen_dim = 40, gen_dae = 6, gen_vc = 4, gen_phones = 32, gen_utts = 50,
              gen_train = 40, gen_ap = 5, gen_min = 80, gen_max = 120;
  double gen_noise = 0.02, gen_proto = 2.0, gen_jitter = 0.5, gen_unvoiced = 0.2;
  bool gen_force = false;
  gen->add_option("--out", gen_out, "Output corpus directory")->required();
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--feature-dim", gen_dim, "Spectral feature dimension M");
  gen->add_option("--dae-speakers", gen_dae, "Encoder-training speakers");
  gen->add_option("--vc-speakers", gen_vc, "Conversion-experiment speakers");
  gen->add_option("--phones", gen_phones, "Shared phone prototypes");
  gen->add_option("--utterances", gen_utts, "Utterances per speaker");
  gen->add_option("--train", gen_train, "Training utterances per speaker");
  gen->add_option("--ap-bands", gen_ap, "Aperiodicity bands A");
  gen->add_option("--min-frames", gen_min, "Minimum frames per utterance");
  gen->add_option("--max-frames", gen_max, "Maximum frames per utterance");
  gen->add_option("--noise", gen_noise, "Observation noise sigma");
  gen->add_option("--proto-scale", gen_proto, "Phone prototype scale");
  gen->add_option("--jitter", gen_jitter, "Within-phone jitter sigma");
  gen->add_option("--unvoiced", gen_unvoiced, "Unvoiced frame fraction");
  gen->add_flag("--force", gen_force, "Overwrite existing output");

  // train-dae
  auto *tdae = app.add_subcommand("train-dae", "Train the multi-speaker encoder");
  CorpusArgs tdae_corpus;
  tdae_corpus.add_options(tdae);
  std::string tdae_out, tdae_speakers, tdae_widths = "512,512";
  std::size_t tdae_bottleneck = 0, tdae_batch = 64, tdae_epochs = 100,
              tdae_patience = 15;
  double tdae_lr = 0.001, tdae_val = 0.1;
  std::uint64_t tdae_seed = 1;
  bool tdae_untied = false, tdae_force = false;
  tdae->add_option("--out", tdae_out, "Output model file")->required();
  tdae->add_option("--speakers", tdae_speakers,
                   "Comma-separated speaker ids (default: ids starting with 'dae')");
  tdae->add_option("--hidden-widths", tdae_widths, "Encoder hidden widths");
  tdae->add_option("--bottleneck", tdae_bottleneck,
                   "Bottleneck width (0 = feature_dim/2)");
  tdae->add_option("--lr", tdae_lr, "RMSprop learning rate");
  tdae->add_option("--batch", tdae_batch, "Minibatch size (0 = full batch)");
  tdae->add_option("--epochs", tdae_epochs, "Maximum epochs");
  tdae->add_option("--patience", tdae_patience, "Early-stopping patience");
  tdae->add_option("--val-fraction", tdae_val, "Held-out frame fraction");
  tdae->add_option("--seed", tdae_seed, "Initialization/shuffle seed");
  tdae->add_flag("--untied", tdae_untied, "Train decoder weights independently");
  tdae->add_flag("--force", tdae_force, "Overwrite existing output");

  // train-dnn
  auto *tdnn = app.add_subcommand("train-dnn", "Train the target mapping network");
  CorpusArgs tdnn_corpus;
  tdnn_corpus.add_options(tdnn);
  std::string tdnn_dae, tdnn_target, tdnn_out;
  double tdnn_lr = 0.001;
  std::size_t tdnn_epochs = 25, tdnn_batch = 64;
  std::uint64_t tdnn_seed = 1;
  bool tdnn_force = false;
  tdnn->add_option("--dae", tdnn_dae, "Trained encoder model file")->required();
  tdnn->add_option("--target", tdnn_target, "Target speaker id")->required();
  tdnn->add_option("--out", tdnn_out, "Output model file")->required();
  tdnn->add_option("--lr", tdnn_lr, "RMSprop learning rate");
  tdnn->add_option("--epochs", tdnn_epochs, "Training epochs");
  tdnn->add_option("--batch", tdnn_batch, "Minibatch size (0 = full batch)");
  tdnn->add_option("--seed", tdnn_seed, "Initialization/shuffle seed");
  tdnn->add_flag("--force", tdnn_force, "Overwrite existing output");

  // train-gmm
  auto *tgmm = app.add_subcommand("train-gmm", "Train the baseline GMM tokenizer");
  CorpusArgs tgmm_corpus;
  tgmm_corpus.add_options(tgmm);
  std::string tgmm_target, tgmm_out;
  std::size_t tgmm_components = 128, tgmm_iters = 200;
  double tgmm_tol = 1e-6;
  std::uint64_t tgmm_seed = 1;
  bool tgmm_force = false;
  tgmm->add_option("--target", tgmm_target, "Target speaker id")->required();
  tgmm->add_option("--out", tgmm_out, "Output model file")->required();
  tgmm->add_option("--components", tgmm_components, "Mixture components");
  tgmm->add_option("--max-iters", tgmm_iters, "Maximum EM iterations");
  tgmm->add_option("--tol", tgmm_tol, "Relative log-likelihood tolerance");
  tgmm->add_option("--seed", tgmm_seed, "Initialization seed");
  tgmm->add_flag("--force", tgmm_force, "Overwrite existing output");

  // convert
  auto *conv = app.add_subcommand("convert", "Convert source utterances");
  CorpusArgs conv_corpus;
  conv_corpus.add_options(conv);
  SystemArgs conv_system;
  conv_system.add_options(conv);
  std::string conv_sources, conv_split = "test", conv_out;
  bool conv_force = false;
  conv->add_option("--sources", conv_sources,
                   "Comma-separated source speakers (default: non-dae, non-target)");
  conv->add_option("--split", conv_split, "Manifest split to convert");
  conv->add_option("--out", conv_out, "Output directory")->required();
  conv->add_flag("--force", conv_force, "Overwrite existing output");

  // evaluate
  auto *ev = app.add_subcommand("evaluate", "Objective evaluation of a system");
  CorpusArgs ev_corpus;
  ev_corpus.add_options(ev);
  SystemArgs ev_system;
  ev_system.add_options(ev);
  std::string ev_sources, ev_split = "test", ev_report, ev_table;
  std::size_t ev_components = 16, ev_iters = 50;
  std::uint64_t ev_seed = 99;
  bool ev_with_c0 = false, ev_force = false;
  ev->add_option("--sources", ev_sources,
                 "Comma-separated source speakers (default: non-dae, non-target)");
  ev->add_option("--split", ev_split, "Manifest split to evaluate");
  ev->add_option("--components", ev_components, "Classifier GMM components");
  ev->add_option("--classifier-max-iters", ev_iters, "Classifier EM iterations");
  ev->add_option("--seed", ev_seed, "Classifier seed");
  ev->add_option("--report", ev_report, "Output report JSON")->required();
  ev->add_option("--table", ev_table, "Optional gnuplot table output");
  ev->add_flag("--with-c0", ev_with_c0, "Include coefficient 0 in MCD");
  ev->add_flag("--force", ev_force, "Overwrite existing output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen_corpus(gen_out, gen_seed, gen_dim, gen_dae, gen_vc, gen_phones,
                            gen_utts, gen_train, gen_ap, gen_min, gen_max, gen_noise,
                            gen_proto, gen_jitter, gen_unvoiced, gen_force);
    }
    if (tdae->parsed()) {
      return cmd_train_dae(tdae_corpus, tdae_out, tdae_speakers, tdae_widths,
                           tdae_bottleneck, tdae_lr, tdae_batch, tdae_epochs,
                           tdae_patience, tdae_val, tdae_seed, tdae_untied,
                           tdae_force);
    }
    if (tdnn->parsed()) {
      return cmd_train_dnn(tdnn_corpus, tdnn_dae, tdnn_target, tdnn_out, tdnn_lr,
                           tdnn_epochs, tdnn_batch, tdnn_seed, tdnn_force);
    }
    if (tgmm->parsed()) {
      return cmd_train_gmm(tgmm_corpus, tgmm_target, tgmm_out, tgmm_components,
                           tgmm_iters, tgmm_tol, tgmm_seed, tgmm_force);
    }
    if (conv->parsed()) {
      return cmd_convert(conv_corpus, conv_system, conv_sources, conv_split, conv_out,
                         conv_force);
    }
    if (ev->parsed()) {
      return cmd_evaluate(ev_corpus, ev_system, ev_sources, ev_split, ev_components,
                          ev_iters, ev_seed, ev_report, ev_table, ev_with_c0,
                          ev_force);
    }
  } catch (const clvc::ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const clvc::TrainingError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const clvc::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
