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

#include "v2isc/group.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>
#include <openssl/rand.h>

#include <algorithm>
#include <map>
#include <mutex>

namespace v2isc {

namespace {

thread_local OpCounter* tl_active = nullptr;

const Group& common_group(const Group& a, const Group& b) {
  if (&a != &b) throw ProtocolError(ErrorCode::kInvalidArgument, "operands from different groups");
  return a;
}

// One scratch context per thread; BN_CTX is not safe to share.
BN_CTX* ctx() {
  struct Holder {
    BN_CTX* c = BN_CTX_new();
    ~Holder() { BN_CTX_free(c); }
  };
  thread_local Holder h;
  if (h.c == nullptr) throw ProtocolError(ErrorCode::kBackend, "BN_CTX_new failed");
  return h.c;
}

void check(int ok, const char* what) {
  if (ok != 1) throw ProtocolError(ErrorCode::kBackend, what);
}

BIGNUM* new_bn() {
  BIGNUM* b = BN_new();
  if (b == nullptr) throw ProtocolError(ErrorCode::kBackend, "BN_new failed");
  return b;
}

}  // namespace

std::string to_hex(ByteView b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (auto v : b) {
    out.push_back(kDigits[v >> 4]);
    out.push_back(kDigits[v & 0xf]);
  }
  return out;
}

// ---- counters ----

CounterScope::CounterScope(OpCounter& counter)
    : counter_(counter), start_(counter), previous_(tl_active), forward_(true) {
  tl_active = &counter_;
}

CounterScope::CounterScope(OpCounter& counter, Isolated)
    : counter_(counter), start_(counter), previous_(tl_active), forward_(false) {
  tl_active = &counter_;
}

CounterScope::~CounterScope() {
  tl_active = previous_;
  if (forward_ && previous_ != nullptr) *previous_ += counter_ - start_;
}

OpCounter* CounterScope::active() noexcept { return tl_active; }

namespace counting {
void scalar_mult() noexcept {
  if (tl_active) ++tl_active->scalar_mults;
}
void point_add() noexcept {
  if (tl_active) ++tl_active->point_adds;
}
void h1() noexcept {
  if (tl_active) ++tl_active->hashes_h1;
}
void h2() noexcept {
  if (tl_active) ++tl_active->hashes_h2;
}
}  // namespace counting

// ---- randomness ----

void SeededRng::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t w = engine_();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(w >> (8 * b));
    }
  }
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw ProtocolError(ErrorCode::kRngFailure, "RAND_bytes failed");
  }
}

namespace detail {
void BnFree::operator()(bignum_st* p) const noexcept { BN_clear_free(p); }
void PointFree::operator()(ec_point_st* p) const noexcept { EC_POINT_free(p); }
}  // namespace detail

// ---- group ----

Group::Group(std::string curve_id, int nid) : curve_id_(std::move(curve_id)) {
  group_ = EC_GROUP_new_by_curve_name(nid);
  if (group_ == nullptr) {
    throw ProtocolError(ErrorCode::kUnknownCurve, "curve unavailable: " + curve_id_);
  }
  BIGNUM* q = new_bn();
  check(EC_GROUP_get_order(group_, q, ctx()), "EC_GROUP_get_order");
  order_.reset(q);
  BIGNUM* qm1 = BN_dup(q);
  check(BN_sub_word(qm1, 1), "BN_sub_word");
  order_minus_one_.reset(qm1);

  BIGNUM* p = new_bn();
  check(EC_GROUP_get_curve(group_, p, nullptr, nullptr, ctx()), "EC_GROUP_get_curve");
  field_bytes_ = static_cast<std::size_t>(BN_num_bytes(p));
  BN_free(p);

  order_bits_ = static_cast<std::size_t>(BN_num_bits(q));
  scalar_bytes_ = static_cast<std::size_t>(BN_num_bytes(q));

  EC_POINT* g = EC_POINT_dup(EC_GROUP_get0_generator(group_), group_);
  if (g == nullptr) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_dup");
  generator_ = Point(*this, g);
}

Group::~Group() { EC_GROUP_free(group_); }

const Group& Group::named(std::string_view curve_id) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Group>, std::less<>> registry;

  std::lock_guard lock(mu);
  if (auto it = registry.find(curve_id); it != registry.end()) return *it->second;

  int nid = NID_undef;
  if (curve_id == "P-256") nid = NID_X9_62_prime256v1;
  else if (curve_id == "secp256k1") nid = NID_secp256k1;
  else if (curve_id == "P-384") nid = NID_secp384r1;
  if (nid == NID_undef) {
    throw ProtocolError(ErrorCode::kUnknownCurve, "unknown curve: " + std::string(curve_id));
  }
  auto group = std::unique_ptr<Group>(new Group(std::string(curve_id), nid));
  auto& ref = *group;
  registry.emplace(std::string(curve_id), std::move(group));
  return ref;
}

Point Group::identity() const {
  EC_POINT* p = EC_POINT_new(group_);
  if (p == nullptr) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_new");
  check(EC_POINT_set_to_infinity(group_, p), "EC_POINT_set_to_infinity");
  return Point(*this, p);
}

std::string Group::order_hex() const {
  Bytes b(scalar_bytes_);
  BN_bn2binpad(order_.get(), b.data(), static_cast<int>(b.size()));
  return to_hex(b);
}

Point Group::mul_generator(const Scalar& k) const {
  EC_POINT* r = EC_POINT_new(group_);
  if (r == nullptr) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_new");
  Point out(*this, r);
  check(EC_POINT_mul(group_, r, k.raw(), nullptr, nullptr, ctx()), "EC_POINT_mul");
  counting::scalar_mult();
  return out;
}

// ---- scalar ----

Scalar::Scalar(const Group& g, bignum_st* owned, Adopt) : group_(&g), bn_(owned) {}

Scalar::Scalar(const Group& g, std::uint64_t v) : group_(&g), bn_(new_bn()) {
  check(BN_set_word(bn_.get(), v), "BN_set_word");
  check(BN_nnmod(bn_.get(), bn_.get(), g.order_.get(), ctx()), "BN_nnmod");
}

Scalar::Scalar(const Scalar& o) : group_(o.group_) {
  if (o.bn_) {
    bn_.reset(BN_dup(o.bn_.get()));
    if (!bn_) throw ProtocolError(ErrorCode::kBackend, "BN_dup");
  }
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this != &o) {
    Scalar tmp(o);
    *this = std::move(tmp);
  }
  return *this;
}

Scalar Scalar::random_nonzero(const Group& g, Rng& rng) {
  // 64 extra bits make the bias of the reduction negligible.
  Bytes buf(g.scalar_bytes() + 8);
  rng.fill(buf);
  return from_bytes_nonzero(g, buf);
}

Scalar Scalar::from_bytes_nonzero(const Group& g, ByteView be) {
  BIGNUM* b = BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr);
  if (b == nullptr) throw ProtocolError(ErrorCode::kBackend, "BN_bin2bn");
  Scalar out(g, b, Adopt{});
  check(BN_nnmod(b, b, g.order_minus_one_.get(), ctx()), "BN_nnmod");
  check(BN_add_word(b, 1), "BN_add_word");
  return out;
}

Scalar Scalar::from_bytes_reduce(const Group& g, ByteView be) {
  BIGNUM* b = BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr);
  if (b == nullptr) throw ProtocolError(ErrorCode::kBackend, "BN_bin2bn");
  Scalar out(g, b, Adopt{});
  check(BN_nnmod(b, b, g.order_.get(), ctx()), "BN_nnmod");
  return out;
}

Scalar Scalar::from_canonical(const Group& g, ByteView be) {
  if (be.size() != g.scalar_bytes()) {
    throw ProtocolError(ErrorCode::kMalformedEncoding, "scalar has wrong width");
  }
  BIGNUM* b = BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr);
  if (b == nullptr) throw ProtocolError(ErrorCode::kBackend, "BN_bin2bn");
  Scalar out(g, b, Adopt{});
  if (BN_cmp(b, g.order_.get()) >= 0) {
    throw ProtocolError(ErrorCode::kInvalidScalar, "scalar not reduced");
  }
  return out;
}

const Group& Scalar::group() const {
  if (group_ == nullptr) throw ProtocolError(ErrorCode::kInvalidScalar, "unbound scalar");
  return *group_;
}

bool Scalar::is_zero() const { return BN_is_zero(bn_.get()); }

Bytes Scalar::to_bytes() const {
  Bytes out(group().scalar_bytes());
  check(BN_bn2binpad(bn_.get(), out.data(), static_cast<int>(out.size())) >= 0 ? 1 : 0,
        "BN_bn2binpad");
  return out;
}

std::string Scalar::to_hex() const { return v2isc::to_hex(to_bytes()); }

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar out(common_group(group(), o.group()), new_bn(), Adopt{});
  check(BN_mod_add(out.bn_.get(), bn_.get(), o.bn_.get(), group_->order_.get(), ctx()),
        "BN_mod_add");
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar out(common_group(group(), o.group()), new_bn(), Adopt{});
  check(BN_mod_sub(out.bn_.get(), bn_.get(), o.bn_.get(), group_->order_.get(), ctx()),
        "BN_mod_sub");
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar out(common_group(group(), o.group()), new_bn(), Adopt{});
  check(BN_mod_mul(out.bn_.get(), bn_.get(), o.bn_.get(), group_->order_.get(), ctx()),
        "BN_mod_mul");
  return out;
}

Scalar Scalar::operator-() const { return Scalar(group(), 0) - *this; }

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw ProtocolError(ErrorCode::kInvalidScalar, "zero has no inverse");
  BIGNUM* r = BN_mod_inverse(nullptr, bn_.get(), group().order_.get(), ctx());
  if (r == nullptr) throw ProtocolError(ErrorCode::kBackend, "BN_mod_inverse");
  return Scalar(*group_, r, Adopt{});
}

bool Scalar::operator==(const Scalar& o) const {
  return group_ == o.group_ && BN_cmp(bn_.get(), o.bn_.get()) == 0;
}

// ---- point ----

Point::Point(const Group& g, ec_point_st* owned) : group_(&g), p_(owned) {}

Point::Point(const Point& o) : group_(o.group_) {
  if (o.p_) {
    p_.reset(EC_POINT_dup(o.p_.get(), group_->raw()));
    if (!p_) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_dup");
  }
}

Point& Point::operator=(const Point& o) {
  if (this != &o) {
    Point tmp(o);
    *this = std::move(tmp);
  }
  return *this;
}

Point Point::from_bytes(const Group& g, ByteView in) {
  if (in.size() != g.point_bytes()) {
    throw ProtocolError(ErrorCode::kMalformedEncoding, "point has wrong width");
  }
  if (in[0] == 0x00) {
    if (std::any_of(in.begin() + 1, in.end(), [](std::uint8_t b) { return b != 0; })) {
      throw ProtocolError(ErrorCode::kMalformedEncoding, "non-canonical identity");
    }
    return g.identity();
  }
  if (in[0] != 0x02 && in[0] != 0x03) {
    throw ProtocolError(ErrorCode::kMalformedEncoding, "bad point prefix");
  }
  EC_POINT* p = EC_POINT_new(g.raw());
  if (p == nullptr) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_new");
  Point out(g, p);
  if (EC_POINT_oct2point(g.raw(), p, in.data(), in.size(), ctx()) != 1 ||
      EC_POINT_is_on_curve(g.raw(), p, ctx()) != 1) {
    throw ProtocolError(ErrorCode::kInvalidPoint, "point not on curve");
  }
  return out;
}

const Group& Point::group() const {
  if (group_ == nullptr) throw ProtocolError(ErrorCode::kInvalidPoint, "unbound point");
  return *group_;
}

bool Point::is_identity() const {
  return EC_POINT_is_at_infinity(group().raw(), p_.get()) == 1;
}

Bytes Point::to_bytes() const {
  Bytes out(group().point_bytes(), 0);
  if (is_identity()) return out;
  std::size_t n = EC_POINT_point2oct(group_->raw(), p_.get(), POINT_CONVERSION_COMPRESSED,
                                     out.data(), out.size(), ctx());
  if (n != out.size()) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_point2oct");
  return out;
}

std::string Point::to_hex() const { return v2isc::to_hex(to_bytes()); }

Point Point::operator+(const Point& o) const {
  EC_POINT* r = EC_POINT_new(common_group(group(), o.group()).raw());
  if (r == nullptr) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_new");
  Point out(*group_, r);
  check(EC_POINT_add(group_->raw(), r, p_.get(), o.p_.get(), ctx()), "EC_POINT_add");
  counting::point_add();
  return out;
}

Point Point::operator-() const {
  Point out(*this);
  check(EC_POINT_invert(group().raw(), out.p_.get(), ctx()), "EC_POINT_invert");
  return out;
}

Point Point::operator-(const Point& o) const { return *this + (-o); }

Point& Point::operator+=(const Point& o) { return *this = *this + o; }

bool Point::operator==(const Point& o) const {
  if (group_ != o.group_) return false;
  if (group_ == nullptr) return true;
  return EC_POINT_cmp(group_->raw(), p_.get(), o.p_.get(), ctx()) == 0;
}

Point operator*(const Scalar& k, const Point& a) {
  const Group& g = common_group(k.group(), a.group());
  EC_POINT* r = EC_POINT_new(g.raw());
  if (r == nullptr) throw ProtocolError(ErrorCode::kBackend, "EC_POINT_new");
  Point out(g, r);
  check(EC_POINT_mul(g.raw(), r, nullptr, a.raw(), k.raw(), ctx()), "EC_POINT_mul");
  counting::scalar_mult();
  return out;
}

}  // namespace v2isc
