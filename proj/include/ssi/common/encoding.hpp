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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <algorithm>

#include "ssi/common/bytes.hpp"
#include "ssi/common/error.hpp"

namespace ssi::encoding {

std::string hex(ByteView data);
Bytes from_hex(std::string_view text);

/// Bitcoin-alphabet base58, as used for Indy DIDs and verkeys.
std::string base58(ByteView data);
Bytes from_base58(std::string_view text);

/// Unpadded RFC 4648 base64url.
std::string base64url(ByteView data);
Bytes from_base64url(std::string_view text);

template <std::size_t N>
ByteArray<N> to_array(ByteView data) {
  ByteArray<N> out{};
  if (data.size() != N) {
    throw Error(ErrorCode::Malformed, "expected " + std::to_string(N) + " bytes, got " + std::to_string(data.size()));
  }
  std::copy(data.begin(), data.end(), out.begin());
  return out;
}

}  // namespace ssi::encoding
