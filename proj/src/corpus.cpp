// clvc/corpus.cpp

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

#include "clvc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "clvc/binio.hpp"
#include "clvc/errors.hpp"

namespace clvc {

namespace {

constexpr char kMagic[4] = {'C', 'V', 'C', 'F'};
constexpr std::uint16_t kVersion = 1;

}  // namespace

void FeatureUtterance::validate() const {
  const std::size_t n = frames.rows();
  if (f0.values.size() != n || ap.rows() != n) {
    throw DataError("FeatureUtterance " + utterance_id + ": frame counts differ (" +
                    std::to_string(n) + " frames, " + std::to_string(f0.values.size()) +
                    " f0, " + std::to_string(ap.rows()) + " ap)");
  }
  if (!frames.all_finite() || !ap.all_finite()) {
    throw DataError("FeatureUtterance " + utterance_id + ": non-finite features");
  }
  for (double v : f0.values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DataError("FeatureUtterance " + utterance_id + ": invalid f0 value");
    }
  }
  if (!(frame_shift > 0.0) || !(frame_length > 0.0)) {
    throw DataError("FeatureUtterance " + utterance_id + ": invalid frame geometry");
  }
}

void write_features(const FeatureUtterance &utt, const std::filesystem::path &path) {
  utt.validate();
  BinaryWriter w;
  w.put_bytes(kMagic, sizeof(kMagic));
  w.put_u16(kVersion);
  w.put_u32(static_cast<std::uint32_t>(utt.num_frames()));
  w.put_u32(static_cast<std::uint32_t>(utt.frames.cols()));
  w.put_u32(static_cast<std::uint32_t>(utt.ap.cols()));
  w.put_f64(utt.frame_shift);
  w.put_f64(utt.frame_length);
  w.put_string(utt.speaker_id);
  w.put_string(utt.utterance_id);
  w.put_bytes(utt.frames.data(), utt.frames.size() * sizeof(double));
  w.put_bytes(utt.f0.values.data(), utt.f0.values.size() * sizeof(double));
  w.put_bytes(utt.ap.data(), utt.ap.size() * sizeof(double));
  write_file(path, w.buffer());
}

FeatureUtterance read_features(const std::filesystem::path &path) {
  BinaryReader r(read_file(path));
  char magic[4];
  r.get_bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError(path.string() + ": bad magic at offset 0");
  }
  const std::uint16_t version = r.get_u16();
  if (version != kVersion) {
    throw FormatError(path.string() + ": unsupported version " +
                      std::to_string(version) + " at offset 4");
  }
  const std::uint32_t n = r.get_u32();
  const std::uint32_t m = r.get_u32();
  const std::uint32_t a = r.get_u32();
  // Dimension sanity before allocating payload buffers.
  const std::uint64_t payload =
      (static_cast<std::uint64_t>(n) * m + n + static_cast<std::uint64_t>(n) * a) *
      sizeof(double);
  FeatureUtterance utt;
  utt.frame_shift = r.get_f64();
  utt.frame_length = r.get_f64();
  utt.speaker_id = r.get_string();
  utt.utterance_id = r.get_string();
  if (payload != r.remaining()) {
    throw FormatError(path.string() + ": header dims (" + std::to_string(n) + "x" +
                      std::to_string(m) + ", ap " + std::to_string(a) +
                      ") disagree with payload size at offset " +
                      std::to_string(r.offset()));
  }
  utt.frames = Matrix(n, m);
  if (utt.frames.size() > 0) {
    r.get_bytes(utt.frames.data(), utt.frames.size() * sizeof(double));
  }
  utt.f0.values.resize(n);
  utt.f0.frame_shift = utt.frame_shift;
  if (n > 0) r.get_bytes(utt.f0.values.data(), n * sizeof(double));
  utt.ap = Matrix(n, a);
  if (utt.ap.size() > 0) r.get_bytes(utt.ap.data(), utt.ap.size() * sizeof(double));
  r.expect_end(path.string());
  utt.validate();
  return utt;
}

void write_manifest(const std::vector<ManifestEntry> &entries,
                    const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# clvc corpus manifest v1: speaker_id utterance_id path split [key=value...]\n";
  for (const ManifestEntry &e : entries) {
    out << e.speaker_id << '\t' << e.utterance_id << '\t' << e.path << '\t' << e.split;
    for (const auto &[k, v] : e.extra) out << '\t' << k << '=' << v;
    out << '\n';
  }
  if (!out) throw DataError("error writing " + path.string());
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<std::string> fields;
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() < 4) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected at least 4 tab-separated fields");
    }
    ManifestEntry e;
    e.speaker_id = fields[0];
    e.utterance_id = fields[1];
    e.path = fields[2];
    e.split = fields[3];
    for (std::size_t i = 4; i < fields.size(); ++i) {
      const auto eq = fields[i].find('=');
      if (eq == std::string::npos) {
        throw FormatError(path.string() + ":" + std::to_string(lineno) +
                          ": extra field without '='");
      }
      e.extra[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ManifestEntry> filter_manifest(const std::vector<ManifestEntry> &entries,
                                           const ManifestFilter &filter) {
  std::vector<ManifestEntry> out;
  for (const ManifestEntry &e : entries) {
    if (!filter.split.empty() && e.split != filter.split) continue;
    if (!filter.speakers.empty() &&
        std::find(filter.speakers.begin(), filter.speakers.end(), e.speaker_id) ==
            filter.speakers.end()) {
      continue;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<FeatureUtterance> load_corpus(const std::filesystem::path &manifest_path,
                                          const std::vector<ManifestEntry> &entries) {
  const std::filesystem::path base = manifest_path.parent_path();
  std::vector<FeatureUtterance> out;
  out.reserve(entries.size());
  for (const ManifestEntry &e : entries) {
    FeatureUtterance utt = read_features(base / e.path);
    if (utt.speaker_id != e.speaker_id || utt.utterance_id != e.utterance_id) {
      throw DataError("manifest/file id mismatch for " + e.path + ": file says " +
                      utt.speaker_id + "/" + utt.utterance_id);
    }
    out.push_back(std::move(utt));
  }
  return out;
}

}  // namespace clvc
