// clvc/corpus.hpp

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

#ifndef CLVC_CORPUS_HPP_
#define CLVC_CORPUS_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "clvc/matrix.hpp"
#include "clvc/prosody.hpp"

namespace clvc {

// One utterance of framed acoustic features: spectral vectors (MGCC role),
// the F0 track and the band-aperiodicity track, all sharing one frame count.
// Default frame geometry is 25 ms windows at a 5 ms shift.
struct FeatureUtterance {
  std::string speaker_id;
  std::string utterance_id;
  Matrix frames;  // n x M spectral features
  F0Track f0;     // length n
  Matrix ap;      // n x A aperiodicity bands
  double frame_shift = 0.005;
  double frame_length = 0.025;

  std::size_t num_frames() const { return frames.rows(); }
  std::size_t feature_dim() const { return frames.cols(); }

  // Frame counts agree across frames/f0/ap, all values finite, f0 >= 0.
  // Throws DataError.
  void validate() const;
};

// CVCF feature file: little-endian binary, magic "CVCF", format version u16,
// frame count / M / A as u32, frame_shift and frame_length as f64, the two id
// strings as u16-length-prefixed UTF-8, then frames, f0, ap as contiguous f64
// runs. Round-trips are bit-exact. Malformed content throws FormatError with
// the offending byte offset.
void write_features(const FeatureUtterance &utt, const std::filesystem::path &path);
FeatureUtterance read_features(const std::filesystem::path &path);

// One manifest record per utterance. `path` is relative to the manifest file;
// `split` is "train" or "test"; `extra` carries optional key=value fields
// (conversion provenance lands here).
struct ManifestEntry {
  std::string speaker_id;
  std::string utterance_id;
  std::string path;
  std::string split;
  std::map<std::string, std::string> extra;
};

void write_manifest(const std::vector<ManifestEntry> &entries,
                    const std::filesystem::path &path);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path);

// Manifest-driven corpus loading. Filters keep entries matching all
// non-empty criteria.
struct ManifestFilter {
  std::vector<std::string> speakers;  // empty = all
  std::string split;                  // empty = all
};

std::vector<ManifestEntry> filter_manifest(const std::vector<ManifestEntry> &entries,
                                           const ManifestFilter &filter);

// Reads the CVCF files behind the selected entries; speaker/utterance ids in
// the files are cross-checked against the manifest. `manifest_path` anchors
// the relative paths.
std::vector<FeatureUtterance> load_corpus(const std::filesystem::path &manifest_path,
                                          const std::vector<ManifestEntry> &entries);

}  // namespace clvc

#endif  // CLVC_CORPUS_HPP_
