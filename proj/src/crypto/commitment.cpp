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
#include "ssi/crypto/commitment.hpp"

#include <sodium.h>

#include "ssi/crypto/hash.hpp"

namespace ssi::crypto {

Salt random_salt() {
  Salt s{};
  randombytes_buf(s.data(), s.size());
  return s;
}

Digest commitment_digest(std::string_view name, std::string_view value, const Salt& salt) {
  Bytes buf;
  buf.reserve(name.size() + value.size() + salt.size() + 8);
  append_field(buf, name);
  append_field(buf, value);
  append(buf, salt);
  return tagged_hash(Domain::Commitment, buf);
}

SaltedCommitment commit(std::string_view name, std::string_view value, std::optional<Salt> salt) {
  SaltedCommitment c{std::string(name), std::string(value), salt.value_or(random_salt()), {}};
  c.digest = commitment_digest(c.name, c.value, c.salt);
  return c;
}

}  // namespace ssi::crypto
