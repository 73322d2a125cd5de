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
#include "ssi/common/encoding.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "ssi/common/error.hpp"

namespace ssi {

namespace {

constexpr std::string_view kErrorNames[] = {
    "InvalidArgument",  "InvalidSeed",       "IndexError",           "EmptyTree",
    "AuthenticationFailure", "InsufficientNodes", "InvalidGenesis",  "Unauthorized",
    "InvalidSignature", "InvalidTransaction", "DuplicateRequest",    "NoConsensus",
    "NotFound",         "CorruptLog",        "InvalidSchema",        "SchemaMismatch",
    "RegistryFull",     "CredentialRevoked", "NotHolder",            "NotIssued",
    "AlreadyRevoked",   "HandshakeFailure",  "ReplayRejected",       "PuzzleRejected",
    "NotConnected",     "NoMatchingCredential", "InvalidState",      "Declined",
    "Timeout",          "WalletLocked",      "NotVerified",          "NoRole",
    "Expired",          "InvalidToken",      "TargetDown",           "TransportError",
    "IoError",          "Malformed",
};

static_assert(std::size(kErrorNames) == static_cast<std::size_t>(ErrorCode::Malformed) + 1);

[[maybe_unused]] const int kSodiumReady = sodium_init();

constexpr char kBase58Alphabet[] = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

}  // namespace

std::string_view to_string(ErrorCode code) { return kErrorNames[static_cast<std::size_t>(code)]; }

ErrorCode error_code_from_string(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kErrorNames); ++i) {
    if (kErrorNames[i] == name) return static_cast<ErrorCode>(i);
  }
  return ErrorCode::InvalidArgument;
}

namespace encoding {

std::string hex(ByteView data) {
  std::string out(data.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), data.data(), data.size());
  out.pop_back();
  return out;
}

Bytes from_hex(std::string_view text) {
  Bytes out(text.size() / 2);
  std::size_t len = 0;
  const char* end = nullptr;
  if (text.size() % 2 != 0 ||
      sodium_hex2bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::Malformed, "invalid hex string");
  }
  out.resize(len);
  return out;
}

std::string base58(ByteView data) {
  std::size_t zeros = 0;
  while (zeros < data.size() && data[zeros] == 0) ++zeros;

  // log(256)/log(58) < 1.38
  std::vector<std::uint8_t> digits((data.size() - zeros) * 138 / 100 + 1, 0);
  std::size_t used = 0;
  for (std::size_t i = zeros; i < data.size(); ++i) {
    int carry = data[i];
    std::size_t j = 0;
    for (auto it = digits.rbegin(); (carry != 0 || j < used) && it != digits.rend(); ++it, ++j) {
      carry += 256 * (*it);
      *it = static_cast<std::uint8_t>(carry % 58);
      carry /= 58;
    }
    used = j;
  }
  auto it = digits.begin() + static_cast<std::ptrdiff_t>(digits.size() - used);
  while (it != digits.end() && *it == 0) ++it;

  std::string out(zeros, '1');
  for (; it != digits.end(); ++it) out.push_back(kBase58Alphabet[*it]);
  return out;
}

Bytes from_base58(std::string_view text) {
  std::size_t ones = 0;
  while (ones < text.size() && text[ones] == '1') ++ones;

  Bytes b256((text.size() - ones) * 733 / 1000 + 1, 0);
  std::size_t used = 0;
  for (std::size_t i = ones; i < text.size(); ++i) {
    const char* p = std::strchr(kBase58Alphabet, text[i]);
    if (p == nullptr || text[i] == '\0') throw Error(ErrorCode::Malformed, "invalid base58 character");
    int carry = static_cast<int>(p - kBase58Alphabet);
    std::size_t j = 0;
    for (auto it = b256.rbegin(); (carry != 0 || j < used) && it != b256.rend(); ++it, ++j) {
      carry += 58 * (*it);
      *it = static_cast<std::uint8_t>(carry % 256);
      carry /= 256;
    }
    used = j;
  }
  auto it = b256.begin() + static_cast<std::ptrdiff_t>(b256.size() - used);
  while (it != b256.end() && *it == 0) ++it;

  Bytes out(ones, 0);
  out.insert(out.end(), it, b256.end());
  return out;
}

std::string base64url(ByteView data) {
  constexpr int kVariant = sodium_base64_VARIANT_URLSAFE_NO_PADDING;
  std::string out(sodium_base64_ENCODED_LEN(data.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(), kVariant);
  out.resize(std::strlen(out.c_str()));
  return out;
}

Bytes from_base64url(std::string_view text) {
  Bytes out(text.size() * 3 / 4 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                        sodium_base64_VARIANT_URLSAFE_NO_PADDING) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::Malformed, "invalid base64url string");
  }
  out.resize(len);
  return out;
}

}  // namespace encoding
}  // namespace ssi
