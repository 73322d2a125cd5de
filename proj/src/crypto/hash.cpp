// Copyright 2026 The ssi-desk Authors
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
#include "ssi/crypto/hash.hpp"

#include <sodium.h>

namespace ssi::crypto {

Digest sha256(ByteView data) {
  Digest out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Digest tagged_hash(Domain domain, ByteView data) {
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  const auto tag = static_cast<std::uint8_t>(domain);
  crypto_hash_sha256_update(&st, &tag, 1);
  crypto_hash_sha256_update(&st, data.data(), data.size());
  Digest out{};
  crypto_hash_sha256_final(&st, out.data());
  return out;
}

}  // namespace ssi::crypto
