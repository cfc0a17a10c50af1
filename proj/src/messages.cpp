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

#include "v2isc/messages.hpp"

#include "v2isc/params.hpp"
#include "v2isc/wire.hpp"

namespace v2isc {

void SystemParams::validate() const {
  auto fail = [](const std::string& why) { throw ProtocolError(ErrorCode::kInvalidParams, why); };
  if (group == nullptr) fail("no group");
  for (const Point* p : {&master_public, &trace_public}) {
    if (!p->valid() || &p->group() != group) fail("public key not in group");
    if (p->is_identity()) fail("public key is the identity");
  }
  if (message_bits < 8 || message_bits % 8 != 0) fail("message length must be a positive multiple of 8 bits");
  if (id_len == 0 || id_len * 8 >= group->order_bits()) fail("identity length does not fit a scalar");
}

void PseudoId::encode_to(Encoder& e) const {
  e.point(pid1).raw(pid2).timestamp(validity.start).timestamp(validity.end);
}

bool check_pid_validity(const PseudoId& pid, Timestamp now) { return pid.validity.contains(now); }

Bytes RsuCertificate::signed_message() const {
  return Encoder().bytes(rsu_id).point(rsu_public).take();
}

void RsuCertificate::encode_to(Encoder& e) const {
  e.bytes(rsu_id).point(rsu_public).point(sig.R).scalar(sig.s);
}

Bytes BroadcastPacket::signed_message() const {
  return Encoder().scalar(eta).timestamp(issued_at).take();
}

// ---- wire ----

Bytes to_wire(const PseudoId& pid) {
  Encoder e;
  pid.encode_to(e);
  return std::move(e).take();
}

Bytes to_wire(const RsuCertificate& cert) {
  Encoder e;
  cert.encode_to(e);
  return std::move(e).take();
}

Bytes to_wire(const BroadcastPacket& pkt) {
  Encoder e;
  pkt.cert.encode_to(e);
  e.scalar(pkt.eta).timestamp(pkt.issued_at).point(pkt.sig.R).scalar(pkt.sig.s);
  return std::move(e).take();
}

Bytes to_wire(const SigncryptedMessage& msg) {
  Encoder e;
  e.scalar(msg.t).raw(msg.c).point(msg.X).point(msg.Y).point(msg.L);
  msg.pid.encode_to(e);
  e.timestamp(msg.tt);
  return std::move(e).take();
}

PseudoId read_pseudo_id(const SystemParams& params, Decoder& d) {
  PseudoId pid;
  pid.pid1 = d.point();
  pid.pid2 = d.raw(params.g().scalar_bytes());
  pid.validity.start = d.timestamp();
  pid.validity.end = d.timestamp();
  return pid;
}

RsuCertificate read_certificate(Decoder& d) {
  RsuCertificate cert;
  cert.rsu_id = d.bytes();
  cert.rsu_public = d.point();
  cert.sig.R = d.point();
  cert.sig.s = d.scalar();
  return cert;
}

PseudoId pseudo_id_from_wire(const SystemParams& params, ByteView in) {
  Decoder d(params.g(), in);
  auto pid = read_pseudo_id(params, d);
  d.expect_done();
  return pid;
}

RsuCertificate certificate_from_wire(const SystemParams& params, ByteView in) {
  Decoder d(params.g(), in);
  auto cert = read_certificate(d);
  d.expect_done();
  return cert;
}

BroadcastPacket broadcast_from_wire(const SystemParams& params, ByteView in) {
  Decoder d(params.g(), in);
  BroadcastPacket pkt;
  pkt.cert = read_certificate(d);
  pkt.eta = d.scalar();
  pkt.issued_at = d.timestamp();
  pkt.sig.R = d.point();
  pkt.sig.s = d.scalar();
  d.expect_done();
  return pkt;
}

SigncryptedMessage signcrypted_from_wire(const SystemParams& params, ByteView in) {
  Decoder d(params.g(), in);
  SigncryptedMessage msg;
  msg.t = d.scalar();
  msg.c = d.raw(params.message_bytes());
  msg.X = d.point();
  msg.Y = d.point();
  msg.L = d.point();
  msg.pid = read_pseudo_id(params, d);
  msg.tt = d.timestamp();
  d.expect_done();
  return msg;
}

std::vector<WireField> signcrypted_layout(const SystemParams& params) {
  const std::size_t scalar = 1 + params.g().scalar_bytes();
  const std::size_t point = 1 + params.g().point_bytes();
  const std::size_t ts = 9;
  std::vector<WireField> out;
  std::size_t off = 0;
  auto add = [&](std::string name, std::size_t len) {
    out.push_back({std::move(name), off, len});
    off += len;
  };
  add("t", scalar);
  add("c", params.message_bytes());
  add("X", point);
  add("Y", point);
  add("L", point);
  add("PID1", point);
  add("PID2", params.g().scalar_bytes());
  add("T.start", ts);
  add("T.end", ts);
  add("tt", ts);
  return out;
}

}  // namespace v2isc
