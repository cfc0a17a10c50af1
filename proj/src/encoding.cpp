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

#include "v2isc/encoding.hpp"

#include <limits>

namespace v2isc {

namespace {

void put_be(Bytes& out, std::uint64_t v, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(ByteView in) {
  std::uint64_t v = 0;
  for (auto b : in) v = (v << 8) | b;
  return v;
}

}  // namespace

Encoder& Encoder::scalar(const Scalar& s) {
  out_.push_back(static_cast<std::uint8_t>(ItemTag::kScalar));
  auto b = s.to_bytes();
  out_.insert(out_.end(), b.begin(), b.end());
  return *this;
}

Encoder& Encoder::point(const Point& p) {
  out_.push_back(static_cast<std::uint8_t>(ItemTag::kPoint));
  auto b = p.to_bytes();
  out_.insert(out_.end(), b.begin(), b.end());
  return *this;
}

Encoder& Encoder::bytes(ByteView b) {
  if (b.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ProtocolError(ErrorCode::kInvalidArgument, "byte string too long to encode");
  }
  out_.push_back(static_cast<std::uint8_t>(ItemTag::kBytes));
  put_be(out_, b.size(), 4);
  out_.insert(out_.end(), b.begin(), b.end());
  return *this;
}

Encoder& Encoder::bytes(std::string_view s) {
  return bytes(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

Encoder& Encoder::timestamp(Timestamp t) {
  out_.push_back(static_cast<std::uint8_t>(ItemTag::kTimestamp));
  put_be(out_, static_cast<std::uint64_t>(t.seconds), 8);
  return *this;
}

Encoder& Encoder::raw(ByteView b) {
  out_.insert(out_.end(), b.begin(), b.end());
  return *this;
}

Bytes encode(const Scalar& s) { return Encoder().scalar(s).take(); }
Bytes encode(const Point& p) { return Encoder().point(p).take(); }
Bytes encode(ByteView b) { return Encoder().bytes(b).take(); }
Bytes encode(Timestamp t) { return Encoder().timestamp(t).take(); }

ByteView Decoder::take(std::size_t n) {
  if (in_.size() - pos_ < n) {
    throw ProtocolError(ErrorCode::kMalformedEncoding, "truncated encoding");
  }
  auto v = in_.subspan(pos_, n);
  pos_ += n;
  return v;
}

void Decoder::expect_tag(ItemTag tag) {
  if (take(1)[0] != static_cast<std::uint8_t>(tag)) {
    throw ProtocolError(ErrorCode::kMalformedEncoding, "unexpected item tag");
  }
}

Scalar Decoder::scalar() {
  expect_tag(ItemTag::kScalar);
  return Scalar::from_canonical(group_, take(group_.scalar_bytes()));
}

Point Decoder::point() {
  expect_tag(ItemTag::kPoint);
  return Point::from_bytes(group_, take(group_.point_bytes()));
}

Bytes Decoder::bytes() {
  expect_tag(ItemTag::kBytes);
  auto len = get_be(take(4));
  auto v = take(static_cast<std::size_t>(len));
  return Bytes(v.begin(), v.end());
}

Timestamp Decoder::timestamp() {
  expect_tag(ItemTag::kTimestamp);
  return Timestamp{static_cast<std::int64_t>(get_be(take(8)))};
}

Bytes Decoder::raw(std::size_t n) {
  auto v = take(n);
  return Bytes(v.begin(), v.end());
}

void Decoder::expect_done() const {
  if (!done()) throw ProtocolError(ErrorCode::kMalformedEncoding, "trailing bytes");
}

}  // namespace v2isc
