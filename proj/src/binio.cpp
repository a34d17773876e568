// clvc/binio.cpp

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

#include "clvc/binio.hpp"

#include <cstring>
#include <fstream>

#include "clvc/errors.hpp"

namespace clvc {

void BinaryWriter::put_u8(std::uint8_t v) { buffer_.push_back(v); }

void BinaryWriter::put_u16(std::uint16_t v) { put_bytes(&v, sizeof(v)); }
void BinaryWriter::put_u32(std::uint32_t v) { put_bytes(&v, sizeof(v)); }
void BinaryWriter::put_u64(std::uint64_t v) { put_bytes(&v, sizeof(v)); }
void BinaryWriter::put_f64(double v) { put_bytes(&v, sizeof(v)); }

void BinaryWriter::put_bytes(const void *data, std::size_t size) {
  const auto *p = static_cast<const std::uint8_t *>(data);
  buffer_.insert(buffer_.end(), p, p + size);
}

void BinaryWriter::put_string(const std::string &s) {
  if (s.size() > 0xffff) {
    throw ConfigError("put_string: string longer than 65535 bytes");
  }
  put_u16(static_cast<std::uint16_t>(s.size()));
  put_bytes(s.data(), s.size());
}

void BinaryWriter::put_f64_vector(std::span<const double> v) {
  put_u64(v.size());
  put_bytes(v.data(), v.size() * sizeof(double));
}

void BinaryReader::need(std::size_t size) const {
  if (offset_ + size > buffer_.size()) {
    throw FormatError("truncated content: need " + std::to_string(size) +
                      " bytes at offset " + std::to_string(offset_) + ", have " +
                      std::to_string(buffer_.size() - offset_));
  }
}

void BinaryReader::get_bytes(void *out, std::size_t size) {
  need(size);
  std::memcpy(out, buffer_.data() + offset_, size);
  offset_ += size;
}

std::uint8_t BinaryReader::get_u8() {
  std::uint8_t v;
  get_bytes(&v, sizeof(v));
  return v;
}

std::uint16_t BinaryReader::get_u16() {
  std::uint16_t v;
  get_bytes(&v, sizeof(v));
  return v;
}

std::uint32_t BinaryReader::get_u32() {
  std::uint32_t v;
  get_bytes(&v, sizeof(v));
  return v;
}

std::uint64_t BinaryReader::get_u64() {
  std::uint64_t v;
  get_bytes(&v, sizeof(v));
  return v;
}

double BinaryReader::get_f64() {
  double v;
  get_bytes(&v, sizeof(v));
  return v;
}

std::string BinaryReader::get_string() {
  const std::uint16_t len = get_u16();
  need(len);
  std::string s(reinterpret_cast<const char *>(buffer_.data() + offset_), len);
  offset_ += len;
  return s;
}

std::vector<double> BinaryReader::get_f64_vector() {
  const std::uint64_t count = get_u64();
  // Guard against a corrupt count before allocating.
  if (count > remaining() / sizeof(double)) {
    throw FormatError("vector count " + std::to_string(count) +
                      " exceeds remaining bytes at offset " + std::to_string(offset_));
  }
  std::vector<double> v(count);
  if (count > 0) get_bytes(v.data(), count * sizeof(double));
  return v;
}

void BinaryReader::expect_end(const std::string &what) const {
  if (offset_ != buffer_.size()) {
    throw FormatError(what + ": " + std::to_string(buffer_.size() - offset_) +
                      " trailing bytes at offset " + std::to_string(offset_));
  }
}

std::vector<std::uint8_t> read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw DataError("error reading " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("error writing " + path.string());
}

}  // namespace clvc
