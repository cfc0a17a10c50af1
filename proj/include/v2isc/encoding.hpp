// Copyright 2026 The v2isc Authors
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

// Canonical, injective byte encoding of protocol values. Every item starts
// with a one-byte type tag:
//
//   scalar     0x01 || big-endian, group scalar width
//   point      0x02 || compressed point (0x00.. for the identity)
//   bytes      0x03 || u32 big-endian length || payload
//   timestamp  0x04 || i64 big-endian seconds
//
// Each item is self-delimiting given the group, so a concatenation of items
// parses uniquely. These bytes are both the hash input and the wire format.

#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

#include "v2isc/group.hpp"

namespace v2isc {

// Seconds since the Unix epoch.
struct Timestamp {
  std::int64_t seconds = 0;
  auto operator<=>(const Timestamp&) const = default;
};

enum class ItemTag : std::uint8_t {
  kScalar = 0x01,
  kPoint = 0x02,
  kBytes = 0x03,
  kTimestamp = 0x04,
};

class Encoder {
 public:
  Encoder& scalar(const Scalar& s);
  Encoder& point(const Point& p);
  Encoder& bytes(ByteView b);
  Encoder& bytes(std::string_view s);
  Encoder& timestamp(Timestamp t);
  // Untagged bytes: fixed-width wire fields or already-encoded items.
  Encoder& raw(ByteView b);

  const Bytes& data() const { return out_; }
  // Moves the buffer out; the encoder is left empty.
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

Bytes encode(const Scalar& s);
Bytes encode(const Point& p);
Bytes encode(ByteView b);
Bytes encode(Timestamp t);

// Reads the items written by Encoder; throws ProtocolError on any deviation.
class Decoder {
 public:
  Decoder(const Group& g, ByteView in) : group_(g), in_(in) {}

  Scalar scalar();
  Point point();
  Bytes bytes();
  Timestamp timestamp();
  Bytes raw(std::size_t n);

  bool done() const { return pos_ == in_.size(); }
  void expect_done() const;

 private:
  ByteView take(std::size_t n);
  void expect_tag(ItemTag tag);

  const Group& group_;
  ByteView in_;
  std::size_t pos_ = 0;
};

}  // namespace v2isc
