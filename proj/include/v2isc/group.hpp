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

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// OpenSSL handle types, kept opaque so callers never include OpenSSL headers.
struct bignum_st;
struct ec_group_st;
struct ec_point_st;

namespace v2isc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Lowercase hex.
std::string to_hex(ByteView b);

enum class ErrorCode {
  kInvalidPoint,
  kInvalidScalar,
  kIdentityPoint,
  kMalformedEncoding,
  kUnknownCurve,
  kInvalidParams,
  kRngFailure,
  kPartialKeyInvalid,
  kCertificateInvalid,
  kForeignPseudoId,
  kExpiredPseudoId,
  kEmptyBatch,
  kInvalidArgument,
  kBackend,
};

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Counts of the operations the complexity comparison is stated in.
struct OpCounter {
  std::uint64_t scalar_mults = 0;
  std::uint64_t hashes_h1 = 0;
  std::uint64_t hashes_h2 = 0;
  std::uint64_t point_adds = 0;

  OpCounter& operator+=(const OpCounter& o) {
    scalar_mults += o.scalar_mults;
    hashes_h1 += o.hashes_h1;
    hashes_h2 += o.hashes_h2;
    point_adds += o.point_adds;
    return *this;
  }
  friend OpCounter operator-(OpCounter a, const OpCounter& b) {
    a.scalar_mults -= b.scalar_mults;
    a.hashes_h1 -= b.hashes_h1;
    a.hashes_h2 -= b.hashes_h2;
    a.point_adds -= b.point_adds;
    return a;
  }
  bool operator==(const OpCounter&) const = default;
};

// Routes operation counts on the current thread into `counter` for the
// lifetime of the scope. Nested scopes forward their delta to the enclosing
// one on exit unless constructed isolated (used by worker threads whose
// counts are merged explicitly).
class CounterScope {
 public:
  struct Isolated {};

  explicit CounterScope(OpCounter& counter);
  CounterScope(OpCounter& counter, Isolated);
  ~CounterScope();

  CounterScope(const CounterScope&) = delete;
  CounterScope& operator=(const CounterScope&) = delete;

  static OpCounter* active() noexcept;

 private:
  OpCounter& counter_;
  OpCounter start_;
  OpCounter* previous_;
  bool forward_;
};

namespace counting {
void scalar_mult() noexcept;
void point_add() noexcept;
void h1() noexcept;
void h2() noexcept;
}  // namespace counting

// Source of randomness. Every random choice in the protocol goes through one
// of these so test runs can be replayed from a seed.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

// Deterministic generator for tests, simulations and benchmarks.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 engine_;
};

// OS-backed CSPRNG.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

class Group;

namespace detail {
struct BnFree {
  void operator()(bignum_st* p) const noexcept;
};
struct PointFree {
  void operator()(ec_point_st* p) const noexcept;
};
}  // namespace detail

// Element of Z_q for the group it belongs to; always fully reduced.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Group& g, std::uint64_t v);
  Scalar(const Scalar& o);
  Scalar& operator=(const Scalar& o);
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(Scalar&&) noexcept = default;
  ~Scalar() = default;

  // Uniform element of [1, q-1].
  static Scalar random_nonzero(const Group& g, Rng& rng);
  // (big-endian integer mod (q-1)) + 1, always in [1, q-1].
  static Scalar from_bytes_nonzero(const Group& g, ByteView be);
  // Big-endian integer reduced mod q.
  static Scalar from_bytes_reduce(const Group& g, ByteView be);
  // Big-endian integer of exactly scalar_bytes(); rejects values >= q.
  static Scalar from_canonical(const Group& g, ByteView be);

  const Group& group() const;
  bool is_zero() const;
  // Fixed-width big-endian.
  Bytes to_bytes() const;
  std::string to_hex() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;

  const bignum_st* raw() const { return bn_.get(); }

 private:
  struct Adopt {};
  Scalar(const Group& g, bignum_st* owned, Adopt);

  const Group* group_ = nullptr;
  std::unique_ptr<bignum_st, detail::BnFree> bn_;
};

// Point on the group's curve, or the identity. Every Point in existence is on
// the curve: the only ways to make one are arithmetic and validated decoding.
class Point {
 public:
  Point() = default;
  Point(const Point& o);
  Point& operator=(const Point& o);
  Point(Point&&) noexcept = default;
  Point& operator=(Point&&) noexcept = default;
  ~Point() = default;

  // Decodes the compressed form produced by to_bytes(), including the
  // all-zero identity encoding. Rejects x coordinates not on the curve.
  static Point from_bytes(const Group& g, ByteView in);

  const Group& group() const;
  bool is_identity() const;
  bool valid() const { return group_ != nullptr; }
  // Parity prefix (0x02/0x03) then big-endian x; identity is all zeros.
  Bytes to_bytes() const;
  std::string to_hex() const;

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator-() const;
  Point& operator+=(const Point& o);

  bool operator==(const Point& o) const;

  const ec_point_st* raw() const { return p_.get(); }

 private:
  friend class Group;
  friend Point operator*(const Scalar& k, const Point& a);
  Point(const Group& g, ec_point_st* owned);

  const Group* group_ = nullptr;
  std::unique_ptr<ec_point_st, detail::PointFree> p_;
};

// Scalar multiplication; counted.
Point operator*(const Scalar& k, const Point& a);

// Prime-order curve group. Instances are interned for the life of the program,
// so references and pointers to them never dangle.
class Group {
 public:
  // "P-256" (default), "secp256k1", "P-384".
  static const Group& named(std::string_view curve_id);
  static const Group& default_group() { return named("P-256"); }

  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;
  ~Group();

  const std::string& curve_id() const { return curve_id_; }
  const Point& generator() const { return generator_; }
  Point identity() const;
  // Group order q as big-endian hex.
  std::string order_hex() const;
  std::size_t order_bits() const { return order_bits_; }
  std::size_t scalar_bytes() const { return scalar_bytes_; }
  std::size_t point_bytes() const { return field_bytes_ + 1; }

  // k * generator using the backend's fixed-base tables; counted.
  Point mul_generator(const Scalar& k) const;

  const ec_group_st* raw() const { return group_; }

 private:
  Group(std::string curve_id, int nid);

  std::string curve_id_;
  ec_group_st* group_ = nullptr;
  Point generator_;
  std::unique_ptr<bignum_st, detail::BnFree> order_;
  std::unique_ptr<bignum_st, detail::BnFree> order_minus_one_;
  std::size_t order_bits_ = 0;
  std::size_t scalar_bytes_ = 0;
  std::size_t field_bytes_ = 0;

  friend class Scalar;
  friend class Point;
};

}  // namespace v2isc
