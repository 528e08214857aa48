// Copyright 2026 The g2pm Authors
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

#include "g2pm/serialize.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <zlib.h>

#include "g2pm/error.h"
#include "g2pm/utf8.h"

namespace g2pm {

namespace {

class Writer {
 public:
  void U32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void U64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }
  void Bytes(std::string_view s) {
    U32(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(in_[pos_ + k]) << (8 * k);
    pos_ += 4;
    return v;
  }
  std::uint64_t U64() {
    const std::uint64_t lo = U32();
    const std::uint64_t hi = U32();
    return lo | (hi << 32);
  }
  float F32() { return std::bit_cast<float>(U32()); }
  std::string Bytes() {
    const std::uint32_t n = U32();
    Need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void Need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(ErrorCode::kTruncatedFile, "model payload ends early");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

char32_t SingleChar(const std::string& utf8) {
  const auto decoded = DecodeUtf8(utf8);
  if (decoded.size() != 1) {
    throw Error(ErrorCode::kTruncatedFile, "vocabulary entry is not a single character");
  }
  return decoded[0];
}

}  // namespace

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large inputs in chunks.
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - pos, 1u << 30);
    crc = crc32(crc, bytes.data() + pos, static_cast<uInt>(n));
    pos += n;
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> SerializeModel(const ModelBundle& bundle) {
  const auto& c = bundle.config;
  c.Validate();
  if (bundle.vocab.size() != static_cast<std::size_t>(c.vocab_size) ||
      bundle.labels.size() != static_cast<std::size_t>(c.num_classes)) {
    throw Error(ErrorCode::kDimensionMismatch, "vocab/label tables disagree with config");
  }

  Writer payload;
  for (std::int64_t v : {c.vocab_size, c.embed_dim, c.hidden, c.num_layers, c.fc_dim,
                         c.num_classes}) {
    payload.U32(static_cast<std::uint32_t>(v));
  }
  payload.U32(static_cast<std::uint32_t>(bundle.vocab.chars().size()));
  for (char32_t ch : bundle.vocab.chars()) payload.Bytes(EncodeUtf8(ch));
  payload.U32(static_cast<std::uint32_t>(bundle.labels.size()));
  for (const auto& label : bundle.labels.labels()) payload.Bytes(label);

  const auto expected = ModelParams<float>::Zeros(c).Arrays();
  const auto arrays = bundle.params.Arrays();
  if (arrays.size() != expected.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "parameter layout disagrees with config");
  }
  for (std::size_t a = 0; a < arrays.size(); ++a) {
    if (arrays[a].size() != expected[a].size()) {
      throw Error(ErrorCode::kDimensionMismatch, "parameter array size disagrees with config");
    }
    for (float x : arrays[a]) payload.F32(x);
  }

  payload.U32(static_cast<std::uint32_t>(bundle.observed_classes.size()));
  for (const auto& [ch, ids] : bundle.observed_classes) {
    payload.Bytes(EncodeUtf8(ch));
    payload.U32(static_cast<std::uint32_t>(ids.size()));
    for (int id : ids) payload.U32(static_cast<std::uint32_t>(id));
  }

  Writer file;
  auto& out = file.data();
  out.insert(out.end(), std::begin(kModelMagic), std::end(kModelMagic));
  file.U32(kModelVersion);
  file.U64(payload.data().size());
  out.insert(out.end(), payload.data().begin(), payload.data().end());
  file.U32(Crc32(payload.data()));
  return std::move(out);
}

ModelBundle DeserializeModel(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw Error(ErrorCode::kTruncatedFile, "file shorter than header");
  if (std::memcmp(bytes.data(), kModelMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not a G2PM model file");
  }
  if (bytes.size() < 16) throw Error(ErrorCode::kTruncatedFile, "file shorter than header");
  Reader header(bytes.subspan(4, 12));
  const std::uint32_t version = header.U32();
  if (version != kModelVersion) {
    throw Error(ErrorCode::kUnsupportedVersion, "model format version " + std::to_string(version));
  }
  const std::uint64_t payload_size = header.U64();
  if (bytes.size() - 16 < 4 || bytes.size() - 16 - 4 < payload_size) {
    throw Error(ErrorCode::kTruncatedFile, "payload shorter than declared size");
  }
  if (bytes.size() - 16 - 4 != payload_size) {
    throw Error(ErrorCode::kTruncatedFile, "file size disagrees with declared payload size");
  }
  const auto payload = bytes.subspan(16, payload_size);
  Reader crc_reader(bytes.subspan(16 + payload_size, 4));
  if (crc_reader.U32() != Crc32(payload)) {
    throw Error(ErrorCode::kChecksumMismatch, "payload CRC-32 mismatch");
  }

  Reader in(payload);
  ModelBundle bundle;
  auto& c = bundle.config;
  c.vocab_size = in.U32();
  c.embed_dim = in.U32();
  c.hidden = in.U32();
  c.num_layers = in.U32();
  c.fc_dim = in.U32();
  c.num_classes = in.U32();
  c.Validate();

  const std::uint32_t n_chars = in.U32();
  if (n_chars + 2 != c.vocab_size) {
    throw Error(ErrorCode::kDimensionMismatch, "vocabulary size disagrees with config");
  }
  std::vector<char32_t> chars;
  chars.reserve(n_chars);
  for (std::uint32_t k = 0; k < n_chars; ++k) chars.push_back(SingleChar(in.Bytes()));
  bundle.vocab = VocabTable(std::move(chars));

  const std::uint32_t n_labels = in.U32();
  if (n_labels != c.num_classes) {
    throw Error(ErrorCode::kDimensionMismatch, "label count disagrees with config");
  }
  std::vector<std::string> labels;
  for (std::uint32_t k = 0; k < n_labels; ++k) labels.push_back(in.Bytes());
  bundle.labels = LabelSpace(std::move(labels));

  bundle.params = ModelParams<float>::Zeros(c);
  for (auto& array : bundle.params.Arrays()) {
    for (float& x : array) x = in.F32();
  }

  const std::uint32_t n_observed = in.U32();
  for (std::uint32_t k = 0; k < n_observed; ++k) {
    const char32_t ch = SingleChar(in.Bytes());
    const std::uint32_t n_ids = in.U32();
    std::vector<int> ids;
    for (std::uint32_t i = 0; i < n_ids; ++i) {
      const std::uint32_t id = in.U32();
      if (id >= n_labels) throw Error(ErrorCode::kIndexOutOfRange, "observed class id");
      ids.push_back(static_cast<int>(id));
    }
    bundle.observed_classes.emplace(ch, std::move(ids));
  }
  if (in.remaining() != 0) {
    throw Error(ErrorCode::kTruncatedFile, "trailing bytes after model payload");
  }
  return bundle;
}

void SaveModel(const ModelBundle& bundle, const std::filesystem::path& path) {
  const auto bytes = SerializeModel(bundle);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

ModelBundle LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open model " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DeserializeModel(bytes);
}

}  // namespace g2pm
