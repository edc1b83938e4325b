// Copyright (c) 2026 The ug2p Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "ug2p/checksum.hpp"
#include "ug2p/model.hpp"

// Self-describing model file. Layout, all integers and floats little-endian:
//
//   "G2PM" | u32 version (=1) | u32 num_layers | u32 hidden_size |
//   u32 embed_size (resolved, never 0) | u32 max_decode_len | u64 seed |
//   u32 n_in  | n_in  x (u32 byte_len, bytes) |
//   u32 n_out | n_out x (u32 byte_len, bytes) |
//   f64 x n_params, tensors in canonical visit_tensors order, each tensor
//   in its flat (column-major) element order |
//   u32 crc32 over every preceding byte
//
// Loading checks, in order: magic, version, structural bounds (TruncatedFile
// covers both missing and surplus bytes), checksum, then semantics.

namespace ug2p {

struct Model {
  ModelConfig config;
  Vocab vocab;
  ModelParams params;
};

namespace detail {

constexpr char kModelMagic[4] = {'G', '2', 'P', 'M'};
constexpr std::uint32_t kModelVersion = 1;

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  std::size_t remaining() const { return size_ - pos_; }

  const std::uint8_t* take(std::size_t n) {
    if (remaining() < n)
      throw Error(Errc::TruncatedFile, "model file ends early");
    const std::uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
  }

  std::uint32_t u32() {
    const std::uint8_t* p = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    const std::uint8_t* p = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  std::string str(std::size_t n) {
    const std::uint8_t* p = take(n);
    return std::string(reinterpret_cast<const char*>(p), n);
  }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::uint8_t> serialize_model(const Model& m) {
  using namespace detail;
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kModelMagic, kModelMagic + 4);
  put_u32(out, kModelVersion);
  put_u32(out, std::uint32_t(m.config.num_layers));
  put_u32(out, std::uint32_t(m.config.hidden_size));
  put_u32(out, std::uint32_t(m.config.embed()));
  put_u32(out, std::uint32_t(m.config.max_decode_len));
  put_u64(out, m.config.seed);

  for (const auto* side : {&m.vocab.input_tokens(), &m.vocab.output_tokens()}) {
    put_u32(out, std::uint32_t(side->size()));
    for (const std::string& tok : *side) {
      put_u32(out, std::uint32_t(tok.size()));
      out.insert(out.end(), tok.begin(), tok.end());
    }
  }

  visit_tensors(const_cast<ModelParams&>(m.params), [&](auto& t) {
    const double* d = t.data();
    for (Eigen::Index i = 0; i < t.size(); ++i) put_f64(out, d[i]);
  });

  put_u32(out, crc32(out.data(), out.size()));
  return out;
}

inline Model parse_model(const std::uint8_t* data, std::size_t size) {
  using namespace detail;
  ByteReader r(data, size);

  const std::uint8_t* magic = r.take(4);
  if (std::memcmp(magic, kModelMagic, 4) != 0)
    throw Error(Errc::BadMagic, "not a model file");
  const std::uint32_t version = r.u32();
  if (version != kModelVersion)
    throw Error(Errc::UnsupportedVersion,
                "model format version " + std::to_string(version));

  Model m;
  m.config.num_layers = r.u32();
  m.config.hidden_size = r.u32();
  m.config.embed_size = r.u32();
  m.config.max_decode_len = r.u32();
  m.config.seed = r.u64();

  std::vector<std::string> sides[2];
  for (auto& side : sides) {
    const std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t len = r.u32();
      side.push_back(r.str(len));
    }
  }

  // Structure first so truncation is reported as such, checksum second so a
  // flipped payload byte is a ChecksumMismatch, semantics last. Sizes are
  // cross-checked against the remaining bytes before anything is allocated,
  // so a corrupt header cannot request an absurd buffer.
  if (m.config.num_layers > 1024 || m.config.hidden_size > (1u << 20) ||
      m.config.embed_size > (1u << 20))
    throw Error(Errc::TruncatedFile, "implausible model header");
  const std::uint64_t H = m.config.hidden_size;
  const std::uint64_t E = m.config.embed();
  const std::uint64_t v_in = sides[0].size(), v_out = sides[1].size();
  std::uint64_t count = v_in * E + v_out * E + v_out * H + v_out;
  for (std::size_t l = 0; l < m.config.num_layers; ++l)
    count += 2 * (4 * H * (l == 0 ? E : H) + 4 * H * H + 4 * H);
  if (r.remaining() < count * 8 + 4)
    throw Error(Errc::TruncatedFile, "model file ends early");
  if (r.remaining() > count * 8 + 4)
    throw Error(Errc::TruncatedFile, "trailing bytes after model payload");

  ModelParams params = zero_params(m.config, v_in, v_out);
  visit_tensors(params, [&](auto& t) {
    double* d = t.data();
    for (Eigen::Index i = 0; i < t.size(); ++i) d[i] = r.f64();
  });
  const std::uint32_t stored_crc = r.u32();
  if (crc32(data, size - 4) != stored_crc)
    throw Error(Errc::ChecksumMismatch, "model file corrupted");

  m.config.validate();
  m.vocab = Vocab(std::move(sides[0]), std::move(sides[1]));
  m.params = std::move(params);
  return m;
}

inline void save_model(const Model& m, const std::string& path) {
  std::vector<std::uint8_t> bytes = serialize_model(m);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw Error(Errc::IoError, "short write to " + path);
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_model(bytes.data(), bytes.size());
}

}  // namespace ug2p
