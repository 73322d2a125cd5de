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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ssi {

enum class ErrorCode {
  InvalidArgument,
  InvalidSeed,
  IndexError,
  EmptyTree,
  AuthenticationFailure,
  InsufficientNodes,
  InvalidGenesis,
  Unauthorized,
  InvalidSignature,
  InvalidTransaction,
  DuplicateRequest,
  NoConsensus,
  NotFound,
  CorruptLog,
  InvalidSchema,
  SchemaMismatch,
  RegistryFull,
  CredentialRevoked,
  NotHolder,
  NotIssued,
  AlreadyRevoked,
  HandshakeFailure,
  ReplayRejected,
  PuzzleRejected,
  NotConnected,
  NoMatchingCredential,
  InvalidState,
  Declined,
  Timeout,
  WalletLocked,
  NotVerified,
  NoRole,
  Expired,
  InvalidToken,
  TargetDown,
  TransportError,
  IoError,
  Malformed,
};

std::string_view to_string(ErrorCode code);
ErrorCode error_code_from_string(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}
  explicit Error(ErrorCode code) : std::runtime_error(std::string(to_string(code))), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by replay when the audit hash chain breaks; seq_no is the first
// entry whose link to its predecessor does not verify.
class CorruptLogError : public Error {
 public:
  CorruptLogError(std::uint64_t seq_no, const std::string& message)
      : Error(ErrorCode::CorruptLog, "at seqNo " + std::to_string(seq_no) + ": " + message),
        seq_no_(seq_no) {}

  std::uint64_t seq_no() const noexcept { return seq_no_; }

 private:
  std::uint64_t seq_no_;
};

}  // namespace ssi
