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

#include <exception>

#include "v2isc/kernels.hpp"

namespace v2isc::kernels {

namespace {

// Runs body(i) for i in [0, n) across the team. Each thread counts into its
// own OpCounter, merged into the caller's scope afterwards. The first
// exception thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  OpCounter* parent = CounterScope::active();
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel
  {
    OpCounter local;
    {
      CounterScope scope(local, CounterScope::Isolated{});
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
          body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(v2isc_kernel_error)
          if (!error) error = std::current_exception();
        }
      }
    }
    if (parent != nullptr) {
#pragma omp critical(v2isc_counter_merge)
      *parent += local;
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<MessageHashes> message_hashes_parallel(const Group& g, ByteView cert_encoding,
                                                   std::span<const SigncryptedMessage> batch) {
  std::vector<MessageHashes> out(batch.size());
  parallel_for(batch.size(),
               [&](std::size_t i) { out[i] = hash_message(g, cert_encoding, batch[i]); });
  return out;
}

std::vector<Bytes> decrypt_parallel(const SystemParams& params, const Scalar& rsu_secret,
                                    std::span<const SigncryptedMessage> batch) {
  std::vector<Bytes> out(batch.size());
  parallel_for(batch.size(),
               [&](std::size_t i) { out[i] = decrypt_message(params, rsu_secret, batch[i]); });
  return out;
}

}  // namespace v2isc::kernels
