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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "g2pm/model.h"

namespace g2pm {

// Model file layout, little-endian throughout:
//
//   "G2PM"  u32 version  u64 payload_size  payload[payload_size]  u32 crc32(payload)
//
// payload:
//   config      u32 x 6: vocab_size embed_dim hidden num_layers fc_dim num_classes
//   vocab       u32 n (= vocab_size - 2), then n x (u32 len, UTF-8 bytes); ids start at 2
//   labels      u32 n (= num_classes), then n x (u32 len, ASCII canonical pinyin)
//   weights     float32 arrays in ModelParams::Visit order, sizes implied by config
//   observed    u32 n, then n x (u32 len, UTF-8 char, u32 k, k x u32 class id)
inline constexpr char kModelMagic[4] = {'G', '2', 'P', 'M'};
inline constexpr std::uint32_t kModelVersion = 1;

std::vector<std::uint8_t> SerializeModel(const ModelBundle& bundle);

// Throws kBadMagic, kUnsupportedVersion, kTruncatedFile or kChecksumMismatch.
ModelBundle DeserializeModel(std::span<const std::uint8_t> bytes);

void SaveModel(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle LoadModel(const std::filesystem::path& path);

std::uint32_t Crc32(std::span<const std::uint8_t> bytes);

}  // namespace g2pm
