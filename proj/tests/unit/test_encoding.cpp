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
#include <doctest.h>

#include <sodium.h>

#include "ssi/common/encoding.hpp"
#include "ssi/common/error.hpp"

using namespace ssi;

TEST_CASE("base58 matches the bitcoin alphabet vectors") {
  CHECK(encoding::base58(as_bytes("Hello World!")) == "2NEpo7TZRRrLZSi2U");
  CHECK(encoding::base58(Bytes{0, 0, 1}) == "112");
  CHECK(encoding::base58(Bytes{}) == "");
  CHECK(to_string(encoding::from_base58("2NEpo7TZRRrLZSi2U")) == "Hello World!");
  CHECK_THROWS_AS(encoding::from_base58("0OIl"), Error);
}

TEST_CASE("base58 and base64url round trip random buffers") {
  for (std::size_t len = 0; len < 80; ++len) {
    Bytes b(len);
    randombytes_buf(b.data(), b.size());
    if (len % 7 == 0 && len > 2) b[0] = b[1] = 0;
    CHECK(encoding::from_base58(encoding::base58(b)) == b);
    const auto text = encoding::base64url(b);
    CHECK(text.find('=') == std::string::npos);
    CHECK(encoding::from_base64url(text) == b);
    CHECK(encoding::from_hex(encoding::hex(b)) == b);
  }
}

TEST_CASE("decoders reject garbage") {
  CHECK_THROWS_AS(encoding::from_base64url("a+b/"), Error);
  CHECK_THROWS_AS(encoding::from_hex("abc"), Error);
  CHECK_THROWS_AS(encoding::from_hex("zz"), Error);
}
