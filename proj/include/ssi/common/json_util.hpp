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

#include <string>

#include <json.hpp>

#include "ssi/common/bytes.hpp"
#include "ssi/common/encoding.hpp"

namespace ssi {

using Json = nlohmann::json;

/// Sorted keys, no whitespace. nlohmann::json objects are std::map backed, so
/// dump() is already key-sorted; this is the single place that fixes the format.
std::string canonical(const Json& j);

Json bytes_json(ByteView b);
Bytes json_bytes(const Json& j);

template <std::size_t N>
ByteArray<N> json_array(const Json& j) {
  return encoding::to_array<N>(json_bytes(j));
}

/// Random RFC 4122 version-4 UUID string.
std::string new_uuid();

}  // namespace ssi
