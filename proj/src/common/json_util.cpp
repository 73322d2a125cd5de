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
#include "ssi/common/json_util.hpp"

#include <sodium.h>

#include <cstdio>

#include "ssi/common/error.hpp"

namespace ssi {

std::string canonical(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::strict); }

Json bytes_json(ByteView b) { return encoding::base64url(b); }

Bytes json_bytes(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::Malformed, "expected base64url string");
  return encoding::from_base64url(j.get_ref<const std::string&>());
}

std::string new_uuid() {
  ByteArray<16> b{};
  randombytes_buf(b.data(), b.size());
  b[6] = static_cast<std::uint8_t>((b[6] & 0x0f) | 0x40);
  b[8] = static_cast<std::uint8_t>((b[8] & 0x3f) | 0x80);
  char buf[37];
  std::snprintf(buf, sizeof buf, "%02x%02x%02x%02x-%02x%02x-%02x%02x-%02x%02x-%02x%02x%02x%02x%02x%02x",
                b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7], b[8], b[9], b[10], b[11], b[12], b[13],
                b[14], b[15]);
  return buf;
}

}  // namespace ssi
