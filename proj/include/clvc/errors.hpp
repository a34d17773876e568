// clvc/errors.hpp

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

#ifndef CLVC_ERRORS_HPP_
#define CLVC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace clvc {

// Error taxonomy. The CLI maps these onto process exit codes:
//   ConfigError -> 1 (usage), Shape/Data/Format/Prosody -> 2 (data/format),
//   TrainingError -> 3 (numeric/training).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Dimension or alignment mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Malformed or truncated file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Inputs that are structurally valid but unusable (empty corpus, too few
// frames, mixed speakers where one is required, mismatched model pairs).
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or parameter value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerical failure during optimization (non-finite loss or gradient).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// F0 contract violations (e.g. no voiced frames to average).
class ProsodyError : public Error {
 public:
  using Error::Error;
};

}  // namespace clvc

#endif  // CLVC_ERRORS_HPP_
