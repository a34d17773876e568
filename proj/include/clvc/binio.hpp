// clvc/binio.hpp

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

#ifndef CLVC_BINIO_HPP_
#define CLVC_BINIO_HPP_

#include <bit>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace clvc {

// Little-endian binary encoding shared by the CVCF and CVCM formats.
static_assert(std::endian::native == std::endian::little,
              "clvc file formats assume a little-endian host");

class BinaryWriter {
 public:
  void put_u8(std::uint8_t v);
  void put_u16(std::uint16_t v);
  void put_u32(std::uint32_t v);
  void put_u64(std::uint64_t v);
  void put_f64(double v);
  void put_bytes(const void *data, std::size_t size);
  // u16 length prefix + UTF-8 bytes; throws ConfigError past 65535 bytes.
  void put_string(const std::string &s);
  // u64 count prefix + raw doubles.
  void put_f64_vector(std::span<const double> v);

  const std::vector<std::uint8_t> &buffer() const { return buffer_; }
  std::vector<std::uint8_t> take() { return std::move(buffer_); }

 private:
  std::vector<std::uint8_t> buffer_;
};

// Reads from an in-memory buffer, tracking the byte offset so format errors
// can report where parsing failed. All getters throw FormatError on
// truncation.
class BinaryReader {
 public:
  explicit BinaryReader(std::vector<std::uint8_t> buffer)
      : buffer_(std::move(buffer)) {}

  std::uint8_t get_u8();
  std::uint16_t get_u16();
  std::uint32_t get_u32();
  std::uint64_t get_u64();
  double get_f64();
  std::string get_string();
  std::vector<double> get_f64_vector();
  void get_bytes(void *out, std::size_t size);

  std::size_t offset() const { return offset_; }
  std::size_t remaining() const { return buffer_.size() - offset_; }
  // Throws FormatError unless the whole buffer was consumed.
  void expect_end(const std::string &what) const;

  const std::vector<std::uint8_t> &buffer() const { return buffer_; }

 private:
  void need(std::size_t size) const;  // FormatError with offset on truncation

  std::vector<std::uint8_t> buffer_;
  std::size_t offset_ = 0;
};

// Whole-file helpers. read_file throws DataError when the file cannot be
// opened, write_file when it cannot be written.
std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

}  // namespace clvc

#endif  // CLVC_BINIO_HPP_
