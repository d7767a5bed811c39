// Copyright 2026 The AdaSR Authors. All Rights Reserved.
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

#include "adasr/weights.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "adasr/error.hpp"

namespace adasr {

std::size_t NamedTensor::element_count() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

Tensor NamedTensor::to_tensor() const {
  if (dims.size() > 4) throw ShapeError(name + ": rank " + std::to_string(dims.size()) + " exceeds 4");
  std::size_t s[4] = {1, 1, 1, 1};
  const std::size_t pad = 4 - dims.size();
  for (std::size_t i = 0; i < dims.size(); ++i) s[pad + i] = dims[i];
  return Tensor(Shape{s[0], s[1], s[2], s[3]}, values);
}

void WeightStore::insert(std::string name, std::vector<std::uint32_t> dims, std::vector<float> values) {
  if (contains(name)) throw ParameterError("duplicate tensor name " + name);
  NamedTensor t{std::move(name), std::move(dims), std::move(values)};
  if (t.values.size() != t.element_count()) {
    throw ShapeError(t.name + ": " + std::to_string(t.values.size()) + " values for " +
                     std::to_string(t.element_count()) + " elements");
  }
  index_.emplace(t.name, entries_.size());
  entries_.push_back(std::move(t));
}

const NamedTensor* WeightStore::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const NamedTensor& WeightStore::at(const std::string& name) const {
  const NamedTensor* t = find(name);
  if (!t) throw ParameterError("missing tensor " + name);
  return *t;
}

NamedTensor& WeightStore::at(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw ParameterError("missing tensor " + name);
  return entries_[it->second];
}

namespace {

constexpr char kMagic[4] = {'A', 'D', 'S', 'R'};
constexpr std::uint8_t kDtypeF32 = 0;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t offset() const { return pos_; }
  bool done() const { return pos_ == bytes_.size(); }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw FormatError(std::string("truncated weight file while reading ") + what, pos_);
    }
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8(const char* what) { return take(1, what)[0]; }
  std::uint32_t u32(const char* what) {
    auto s = take(4, what);
    return static_cast<std::uint32_t>(s[0]) | static_cast<std::uint32_t>(s[1]) << 8 |
           static_cast<std::uint32_t>(s[2]) << 16 | static_cast<std::uint32_t>(s[3]) << 24;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_weights(const WeightStore& store) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, kWeightFileVersion);
  put_u32(out, static_cast<std::uint32_t>(store.size()));
  for (const NamedTensor& t : store) {
    put_u32(out, static_cast<std::uint32_t>(t.name.size()));
    out.insert(out.end(), t.name.begin(), t.name.end());
    out.push_back(kDtypeF32);
    out.push_back(static_cast<std::uint8_t>(t.dims.size()));
    for (auto d : t.dims) put_u32(out, d);
    for (float v : t.values) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

WeightStore parse_weights(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  auto magic = in.take(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("bad magic, expected ADSR", 0);
  const std::uint64_t version_at = in.offset();
  if (const auto version = in.u32("version"); version != kWeightFileVersion) {
    throw FormatError("unsupported weight file version " + std::to_string(version), version_at);
  }
  const std::uint32_t count = in.u32("tensor count");

  WeightStore store;
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint64_t name_at = in.offset();
    const std::uint32_t name_len = in.u32("name length");
    auto name_bytes = in.take(name_len, "name");
    std::string name(name_bytes.begin(), name_bytes.end());
    if (store.contains(name)) throw FormatError("duplicate tensor name " + name, name_at);

    const std::uint64_t dtype_at = in.offset();
    if (const auto dtype = in.u8("dtype"); dtype != kDtypeF32) {
      throw FormatError(name + ": unsupported dtype " + std::to_string(dtype), dtype_at);
    }
    const std::uint64_t ndim_at = in.offset();
    const std::uint8_t ndim = in.u8("ndim");
    if (ndim == 0) throw FormatError(name + ": rank must be >= 1", ndim_at);
    std::vector<std::uint32_t> dims(ndim);
    std::uint64_t elements = 1;
    for (auto& d : dims) {
      const std::uint64_t dim_at = in.offset();
      d = in.u32("dims");
      if (d == 0) throw FormatError(name + ": zero-sized dimension", dim_at);
      elements *= d;
      if (elements > bytes.size()) throw FormatError(name + ": payload larger than file", dim_at);
    }
    auto payload = in.take(static_cast<std::size_t>(elements) * 4, "payload");
    std::vector<float> values(static_cast<std::size_t>(elements));
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::uint8_t* b = payload.data() + 4 * i;
      const std::uint32_t bits = static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
                                 static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
      values[i] = std::bit_cast<float>(bits);
    }
    store.insert(std::move(name), std::move(dims), std::move(values));
  }
  if (!in.done()) throw FormatError("trailing bytes after last tensor", in.offset());
  return store;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void save_weights(const WeightStore& store, const std::filesystem::path& path) {
  write_file_bytes(path, serialize_weights(store));
}

WeightStore load_weights(const std::filesystem::path& path) { return parse_weights(read_file_bytes(path)); }

}  // namespace adasr
