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
#include "casnet/harness/checkpoint.h"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "casnet/errors.h"

namespace casnet::harness {
namespace {

constexpr std::string_view kMagic = "CASNET";

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

class Writer {
 public:
  template <typename T>
  void Put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void PutString(std::string_view s) {
    Put(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void PutBytes(std::string_view s) { out_.append(s); }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(std::string_view bytes, std::size_t base)
      : bytes_(bytes), base_(base) {}

  template <typename T>
  T Get(const char* what) {
    Need(sizeof(T), what);
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string GetString(const char* what) {
    const auto n = Get<std::uint32_t>(what);
    Need(n, what);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view GetBytes(std::size_t n, const char* what) {
    Need(n, what);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t offset() const { return base_ + pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  [[noreturn]] void Fail(const std::string& what) const {
    throw FormatError("checkpoint: " + what + " at byte " +
                      std::to_string(offset()));
  }

 private:
  void Need(std::size_t n, const char* what) const {
    if (remaining() < n) Fail(std::string("truncated ") + what);
  }

  std::string_view bytes_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large payloads in pieces.
  while (!bytes.empty()) {
    const std::size_t n = std::min<std::size_t>(bytes.size(), 1u << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uInt>(n));
    bytes.remove_prefix(n);
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

const ad::Tensor& Checkpoint::Find(std::string_view name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return t.value;
  }
  throw LookupError("checkpoint has no tensor '" + std::string(name) + "'");
}

bool Checkpoint::Contains(std::string_view name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return true;
  }
  return false;
}

std::string EncodeCheckpoint(const Checkpoint& checkpoint) {
  Writer manifest;
  manifest.PutString(checkpoint.algo);
  manifest.PutString(checkpoint.config);
  manifest.Put<std::uint64_t>(checkpoint.seed);
  manifest.Put(static_cast<std::uint32_t>(checkpoint.tensors.size()));
  Writer payload;
  for (const auto& t : checkpoint.tensors) {
    manifest.PutString(t.name);
    manifest.Put(static_cast<std::uint32_t>(t.value.shape().size()));
    for (std::size_t d : t.value.shape()) {
      manifest.Put(static_cast<std::uint64_t>(d));
    }
    for (double v : t.value.values()) payload.Put(v);
  }
  Writer out;
  out.PutBytes(kMagic);
  out.Put(checkpoint.version);
  out.Put(static_cast<std::uint64_t>(manifest.str().size()));
  out.PutBytes(manifest.str());
  out.PutBytes(payload.str());
  out.Put(Crc32(payload.str()));
  return std::move(out.str());
}

Checkpoint DecodeCheckpoint(std::string_view bytes) {
  Reader head(bytes, 0);
  if (head.remaining() < kMagic.size() ||
      head.GetBytes(kMagic.size(), "magic") != kMagic) {
    throw FormatError("checkpoint: bad magic at byte 0");
  }
  Checkpoint cp;
  cp.version = head.Get<std::uint8_t>("version");
  if (cp.version != kCheckpointVersion) {
    throw FormatError("checkpoint: unsupported version " +
                      std::to_string(cp.version) + " at byte " +
                      std::to_string(kMagic.size()));
  }
  const auto manifest_len = head.Get<std::uint64_t>("manifest length");
  if (manifest_len > head.remaining()) head.Fail("truncated manifest");
  const std::size_t manifest_start = head.offset();
  Reader manifest(head.GetBytes(manifest_len, "manifest"), manifest_start);

  cp.algo = manifest.GetString("algo tag");
  cp.config = manifest.GetString("config snapshot");
  cp.seed = manifest.Get<std::uint64_t>("seed");
  const auto count = manifest.Get<std::uint32_t>("tensor count");
  std::vector<std::size_t> sizes;
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = manifest.GetString("tensor name");
    const auto rank = manifest.Get<std::uint32_t>("tensor rank");
    if (rank > 8) manifest.Fail("implausible rank " + std::to_string(rank));
    ad::Shape shape(rank);
    std::uint64_t n = 1;
    for (auto& d : shape) {
      const auto dim = manifest.Get<std::uint64_t>("tensor dim");
      if (dim != 0 && n > (std::uint64_t{1} << 40) / dim) {
        manifest.Fail("tensor too large");
      }
      d = static_cast<std::size_t>(dim);
      n *= dim;
    }
    total += n;
    if (total * sizeof(double) > head.remaining()) {
      manifest.Fail("tensor '" + t.name + "' exceeds the payload");
    }
    t.value = ad::Tensor(shape);
    sizes.push_back(n);
    cp.tensors.push_back(std::move(t));
  }
  if (manifest.remaining() != 0) manifest.Fail("trailing manifest bytes");

  const std::size_t payload_start = head.offset();
  const std::string_view payload =
      head.GetBytes(total * sizeof(double), "payload");
  Reader values(payload, payload_start);
  for (auto& t : cp.tensors) {
    for (double& v : t.value.values()) v = values.Get<double>("payload");
  }
  const auto stored = head.Get<std::uint32_t>("checksum");
  if (head.remaining() != 0) head.Fail("trailing bytes");
  if (stored != Crc32(payload)) {
    throw FormatError("checkpoint: payload checksum mismatch at byte " +
                      std::to_string(payload_start));
  }
  return cp;
}

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path) {
  const std::string bytes = EncodeCheckpoint(checkpoint);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) {
      throw IoError("error writing checkpoint " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move checkpoint into place at " + path.string());
  }
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading checkpoint " + path.string());
  try {
    return DecodeCheckpoint(ss.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void AppendTensors(Checkpoint& checkpoint, const nn::ConstParameterRefs& params,
                   std::string_view prefix) {
  for (const ad::Parameter* p : params) {
    checkpoint.tensors.push_back({std::string(prefix) + p->name, p->value});
  }
}

void RestoreTensors(const Checkpoint& checkpoint,
                    const nn::ParameterRefs& params, std::string_view prefix) {
  for (ad::Parameter* p : params) {
    const std::string name = std::string(prefix) + p->name;
    const ad::Tensor& t = checkpoint.Find(name);
    if (t.shape() != p->value.shape()) {
      throw ShapeError("checkpoint tensor '" + name + "' has shape " +
                       ad::ShapeString(t.shape()) + ", expected " +
                       ad::ShapeString(p->value.shape()));
    }
    p->value = t;
  }
}

}  // namespace casnet::harness
