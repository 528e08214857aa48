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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "g2pm/error.h"
#include "test_support.h"

namespace g2pm {
namespace {

template <typename Fn>
void ExpectCode(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

ModelBundle SmallBundle(std::uint64_t seed = 1) {
  auto b = testing::RandomBundle(U"今天来的目是什么", {"de5", "di4", "shen2", "shi2"},
                                 ModelConfig{0, 6, 4, 2, 5, 0}, seed);
  b.observed_classes[U'的'] = {0, 1};
  b.observed_classes[U'什'] = {2};
  return b;
}

std::uint32_t ReadU32(const std::vector<std::uint8_t>& bytes, std::size_t at) {
  return static_cast<std::uint32_t>(bytes[at]) | static_cast<std::uint32_t>(bytes[at + 1]) << 8 |
         static_cast<std::uint32_t>(bytes[at + 2]) << 16 |
         static_cast<std::uint32_t>(bytes[at + 3]) << 24;
}

TEST(Crc32, StandardCheckValue) {
  const std::string text = "123456789";
  const std::vector<std::uint8_t> bytes(text.begin(), text.end());
  EXPECT_EQ(Crc32(bytes), 0xCBF43926u);
}

TEST(Serialize, HeaderLayout) {
  const auto bytes = SerializeModel(SmallBundle());
  ASSERT_GE(bytes.size(), 20u);
  EXPECT_EQ(std::memcmp(bytes.data(), "G2PM", 4), 0);
  EXPECT_EQ(ReadU32(bytes, 4), 1u);
  const std::uint64_t payload = ReadU32(bytes, 8) | static_cast<std::uint64_t>(ReadU32(bytes, 12)) << 32;
  EXPECT_EQ(payload + 20, bytes.size());
  const std::vector<std::uint8_t> body(bytes.begin() + 16, bytes.end() - 4);
  EXPECT_EQ(ReadU32(bytes, bytes.size() - 4), Crc32(body));
  // config section: V, d, H, L, fc, c
  EXPECT_EQ(ReadU32(bytes, 16), 10u);
  EXPECT_EQ(ReadU32(bytes, 20), 6u);
  EXPECT_EQ(ReadU32(bytes, 24), 4u);
  EXPECT_EQ(ReadU32(bytes, 28), 2u);
  EXPECT_EQ(ReadU32(bytes, 32), 5u);
  EXPECT_EQ(ReadU32(bytes, 36), 4u);
}

TEST(Serialize, RoundTripIsBitExact) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ModelBundle a = SmallBundle(seed);
    const auto bytes = SerializeModel(a);
    const ModelBundle b = DeserializeModel(bytes);
    EXPECT_EQ(b.config, a.config);
    EXPECT_EQ(b.vocab.chars(), a.vocab.chars());
    EXPECT_EQ(b.labels.labels(), a.labels.labels());
    EXPECT_EQ(b.observed_classes, a.observed_classes);
    const auto pa = a.params.Arrays();
    const auto pb = b.params.Arrays();
    ASSERT_EQ(pa.size(), pb.size());
    for (std::size_t k = 0; k < pa.size(); ++k) {
      ASSERT_EQ(pa[k].size(), pb[k].size());
      EXPECT_EQ(std::memcmp(pa[k].data(), pb[k].data(), pa[k].size() * sizeof(float)), 0);
    }
    EXPECT_EQ(SerializeModel(b), bytes);
  }
}

TEST(Serialize, SaveAndLoadFile) {
  const auto path = std::filesystem::temp_directory_path() / "g2pm_serialize_test.bin";
  const ModelBundle a = SmallBundle();
  SaveModel(a, path);
  const ModelBundle b = LoadModel(path);
  const Example ex = ParseExample("今天来▁的▁目", "de5");
  EXPECT_EQ(a.Predict(ex).probs, b.Predict(ex).probs);
  std::filesystem::remove(path);
  ExpectCode(ErrorCode::kIo, [&] { LoadModel(path); });
}

TEST(Serialize, EveryPayloadByteFlipIsDetected) {
  const auto bytes = SerializeModel(SmallBundle());
  for (std::size_t at = 16; at < bytes.size() - 4; ++at) {
    auto broken = bytes;
    broken[at] ^= 0x5A;
    ExpectCode(ErrorCode::kChecksumMismatch, [&] { DeserializeModel(broken); });
  }
}

TEST(Serialize, CorruptHeaders) {
  const auto bytes = SerializeModel(SmallBundle());
  auto magic = bytes;
  magic[1] = 'X';
  ExpectCode(ErrorCode::kBadMagic, [&] { DeserializeModel(magic); });
  auto version = bytes;
  version[4] = 2;
  ExpectCode(ErrorCode::kUnsupportedVersion, [&] { DeserializeModel(version); });
  for (std::size_t keep : {std::size_t{0}, std::size_t{3}, std::size_t{10}, std::size_t{40},
                           bytes.size() - 1}) {
    const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + keep);
    ExpectCode(ErrorCode::kTruncatedFile,
               [&] { DeserializeModel(cut); });
  }
  auto longer = bytes;
  longer.push_back(0);
  ExpectCode(ErrorCode::kTruncatedFile, [&] { DeserializeModel(longer); });
}

TEST(Serialize, InconsistentBundleRejected) {
  ModelBundle b = SmallBundle();
  b.config.num_classes = 3;
  ExpectCode(ErrorCode::kDimensionMismatch, [&] { SerializeModel(b); });
}

}  // namespace
}  // namespace g2pm
