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

#include "v2isc/hash.hpp"

#include <openssl/evp.h>

#include <memory>

namespace v2isc {

namespace {

struct MdCtxFree {
  void operator()(EVP_MD_CTX* c) const noexcept { EVP_MD_CTX_free(c); }
};

class Digest {
 public:
  explicit Digest(const EVP_MD* md) : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), md, nullptr) != 1) {
      throw ProtocolError(ErrorCode::kBackend, "digest init failed");
    }
  }
  Digest& update(ByteView b) {
    if (EVP_DigestUpdate(ctx_.get(), b.data(), b.size()) != 1) {
      throw ProtocolError(ErrorCode::kBackend, "digest update failed");
    }
    return *this;
  }
  Bytes finish() {
    Bytes out(EVP_MAX_MD_SIZE);
    unsigned int n = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &n) != 1) {
      throw ProtocolError(ErrorCode::kBackend, "digest final failed");
    }
    out.resize(n);
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, MdCtxFree> ctx_;
};

ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

Scalar h1(const Group& g, std::string_view tag, const Encoder& items) {
  if (tag.size() > 255) throw ProtocolError(ErrorCode::kInvalidArgument, "tag too long");
  const std::uint8_t tag_len = static_cast<std::uint8_t>(tag.size());
  Digest d(g.order_bits() <= 256 ? EVP_sha256() : EVP_sha512());
  auto digest = d.update({&tag_len, 1}).update(as_bytes(tag)).update(items.data()).finish();
  counting::h1();
  return Scalar::from_bytes_nonzero(g, digest);
}

Bytes h2(const Point& point, std::size_t out_bits) {
  if (out_bits == 0 || out_bits % 8 != 0) {
    throw ProtocolError(ErrorCode::kInvalidArgument, "h2 length must be a positive multiple of 8");
  }
  if (point.is_identity()) {
    throw ProtocolError(ErrorCode::kIdentityPoint, "h2 of the identity point");
  }
  const auto encoded = encode(point);
  const std::size_t out_len = out_bits / 8;
  Bytes out;
  out.reserve(out_len + 32);
  for (std::uint32_t i = 0; out.size() < out_len; ++i) {
    const std::uint8_t ctr[4] = {static_cast<std::uint8_t>(i >> 24),
                                 static_cast<std::uint8_t>(i >> 16),
                                 static_cast<std::uint8_t>(i >> 8), static_cast<std::uint8_t>(i)};
    auto block = Digest(EVP_sha256()).update(as_bytes("H2")).update(ctr).update(encoded).finish();
    out.insert(out.end(), block.begin(), block.end());
  }
  out.resize(out_len);
  counting::h2();
  return out;
}

void xor_into(std::span<std::uint8_t> a, ByteView b) {
  if (a.size() != b.size()) throw ProtocolError(ErrorCode::kInvalidArgument, "xor length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

}  // namespace v2isc
