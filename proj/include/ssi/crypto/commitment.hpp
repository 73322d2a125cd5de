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

#include "ssi/common/bytes.hpp"

namespace ssi::crypto {

using Salt = ByteArray<16>;

struct SaltedCommitment {
  std::string name;
  std::string value;
  Salt salt{};
  Digest digest{};
};

Salt random_salt();

/// H(0x01 || len(name) || name || len(value) || value || salt)
Digest commitment_digest(std::string_view name, std::string_view value, const Salt& salt);

SaltedCommitment commit(std::string_view name, std::string_view value,
                        std::optional<Salt> salt = std::nullopt);

}  // namespace ssi::crypto
