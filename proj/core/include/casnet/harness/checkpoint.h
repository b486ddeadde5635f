// Copyright 2026 The CASNET Authors
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
#ifndef CASNET_HARNESS_CHECKPOINT_H_
#define CASNET_HARNESS_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "casnet/autodiff/tensor.h"
#include "casnet/nn/layers.h"

// Binary layout, all integers little-endian:
//   "CASNET" u8 version
//   u64 manifest byte length, then the manifest:
//     str algo, str config, u64 seed, u32 tensor count,
//     per tensor: str name, u32 rank, u64 dims[rank]
//   payload: every tensor's values as f64, row-major, in manifest order
//   u32 CRC32 of the payload
// where str is a u32 byte length followed by the bytes.
namespace casnet::harness {

inline constexpr std::uint8_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  ad::Tensor value;
  friend bool operator==(const NamedTensor&, const NamedTensor&) = default;
};

struct Checkpoint {
  std::uint8_t version = kCheckpointVersion;
  std::string algo;
  std::string config;  // TrainConfig::ToText() snapshot
  std::uint64_t seed = 0;
  std::vector<NamedTensor> tensors;

  // LookupError if absent.
  const ad::Tensor& Find(std::string_view name) const;
  bool Contains(std::string_view name) const;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string EncodeCheckpoint(const Checkpoint& checkpoint);
// FormatError with the byte offset on bad magic, unknown version, truncation,
// trailing bytes or checksum mismatch.
Checkpoint DecodeCheckpoint(std::string_view bytes);

// Writes through a temporary file and a rename, so readers never see a
// partial checkpoint. IoError carries the path.
void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

// Appends parameters as tensors named prefix + parameter name.
void AppendTensors(Checkpoint& checkpoint, const nn::ConstParameterRefs& params,
                   std::string_view prefix = "");
// Copies prefix + name tensors into params. LookupError for a missing name,
// ShapeError for a shape mismatch.
void RestoreTensors(const Checkpoint& checkpoint,
                    const nn::ParameterRefs& params,
                    std::string_view prefix = "");

}  // namespace casnet::harness

#endif  // CASNET_HARNESS_CHECKPOINT_H_
