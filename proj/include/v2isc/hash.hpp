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

#pragma once

#include <string_view>

#include "v2isc/encoding.hpp"

namespace v2isc {

// Domain tags. The protocol's H1 is a single function; the other tags keep
// pseudonym masks and certificate challenges out of its range.
inline constexpr std::string_view kTagH1 = "H1";
inline constexpr std::string_view kTagPseudonym = "pid";
inline constexpr std::string_view kTagCert = "cert";

// Hash to Z_q^*:  (digest(len(tag) || tag || items) mod (q-1)) + 1.
// Digest is SHA-256 for groups up to 256 bits, SHA-512 above. Counted as H1.
Scalar h1(const Group& g, std::string_view tag, const Encoder& items);

// Keystream of exactly out_bits bits (a multiple of 8):
//   SHA-256("H2" || u32be(i) || encode(point)) for i = 0, 1, ... truncated.
// Rejects the identity. Counted as H2.
Bytes h2(const Point& point, std::size_t out_bits);

// XORs `b` into `a` (equal lengths).
void xor_into(std::span<std::uint8_t> a, ByteView b);

}  // namespace v2isc
