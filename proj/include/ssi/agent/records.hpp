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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssi/anoncreds/credential.hpp"
#include "ssi/anoncreds/presentation.hpp"
#include "ssi/common/json_util.hpp"
#include "ssi/crypto/envelope.hpp"
#include "ssi/crypto/keys.hpp"

namespace ssi::agent {

enum class ExchangeRole : std::uint8_t { Initiator, Responder };

enum class ConnState : std::uint8_t { Invited, Requested, Responded, Active, Abandoned };
enum class CredExState : std::uint8_t {
  OfferSent,
  OfferReceived,
  RequestSent,
  RequestReceived,
  CredentialIssued,
  Stored,
  Acked,
  Declined
};
enum class PresExState : std::uint8_t {
  RequestSent,
  RequestReceived,
  PresentationSent,
  PresentationReceived,
  VerifiedTrue,
  VerifiedFalse,
  Declined
};

std::string_view to_string(ConnState s);
std::string_view to_string(CredExState s);
std::string_view to_string(PresExState s);
ConnState conn_state_from_string(std::string_view s);
CredExState cred_ex_state_from_string(std::string_view s);
PresExState pres_ex_state_from_string(std::string_view s);

/// Legal moves for the side that started the exchange (inviter, issuer,
/// verifier) and for the side that answered it.
bool transition_allowed(ExchangeRole role, ConnState from, ConnState to);
bool transition_allowed(ExchangeRole role, CredExState from, CredExState to);
bool transition_allowed(ExchangeRole role, PresExState from, PresExState to);

ConnState initial_state(ExchangeRole role, ConnState);
CredExState initial_state(ExchangeRole role, CredExState);
PresExState initial_state(ExchangeRole role, PresExState);

bool is_terminal(ConnState s);
bool is_terminal(CredExState s);
bool is_terminal(PresExState s);

struct Puzzle {
  std::uint32_t difficulty = 0;  // leading zero bits, at most 24
  ByteArray<16> challenge{};
};

struct Invitation {
  std::string label;
  crypto::PublicKey recipient_key{};
  std::string service_endpoint;
  crypto::Nonce nonce{};
  std::optional<Puzzle> puzzle;
};

Json to_json(const Invitation& inv);
Invitation invitation_from_json(const Json& j);
/// "{endpoint}?oob=" + base64url(JSON)
std::string invitation_url(const Invitation& inv);
/// Throws Malformed.
Invitation parse_invitation_url(std::string_view url);

/// SHA-256(0x08 || challenge || solver key || u64 counter) must start with
/// \p difficulty zero bits.
bool puzzle_solved(const Puzzle& p, const crypto::PublicKey& solver, std::uint64_t counter);
std::uint64_t solve_puzzle(const Puzzle& p, const crypto::PublicKey& solver);

struct ConnectionRecord {
  std::string conn_id;
  ExchangeRole role = ExchangeRole::Initiator;
  ConnState state = ConnState::Invited;
  std::string their_label;
  std::string my_did;
  crypto::PublicKey my_key{};
  std::string their_did;
  crypto::PublicKey their_key{};
  std::string their_endpoint;
  // inviter: key the invitation was addressed to; invitee: the inviter's
  crypto::PublicKey invitation_key{};
  crypto::Nonce invitation_nonce{};
  std::optional<Puzzle> puzzle;
  // invitee's handshake challenge, echoed back by the inviter
  crypto::Nonce challenge{};
  std::string problem;
  std::vector<std::string> history;
};

struct CredentialExchange {
  std::string cred_ex_id;
  std::string thread_id;
  std::string conn_id;
  ExchangeRole role = ExchangeRole::Initiator;
  CredExState state = CredExState::OfferSent;
  std::string cred_def_id;
  std::string schema_id;
  std::map<std::string, std::string> values;
  std::string credential_id;  // holder: stored credential
  std::string rev_reg_id;     // issuer: where the credential was registered
  std::uint32_t rev_index = 0;
  bool revoked = false;
  std::string problem;
  std::vector<std::string> history;
};

struct PresentationExchange {
  std::string pres_ex_id;
  std::string thread_id;
  std::string conn_id;
  ExchangeRole role = ExchangeRole::Initiator;
  PresExState state = PresExState::RequestSent;
  anoncreds::PresentationRequest request;
  std::optional<Json> presentation;
  std::optional<anoncreds::VerificationResult> result;
  std::string problem;
  std::vector<std::string> history;
};

struct StoredCredential {
  std::string credential_id;
  std::string cred_ex_id;
  anoncreds::Credential credential;
  bool revoked = false;
};

Json to_json(const ConnectionRecord& r);
ConnectionRecord connection_from_json(const Json& j);
Json to_json(const CredentialExchange& r);
CredentialExchange cred_ex_from_json(const Json& j);
Json to_json(const PresentationExchange& r);
PresentationExchange pres_ex_from_json(const Json& j);
Json to_json(const StoredCredential& c);
StoredCredential stored_credential_from_json(const Json& j);
anoncreds::VerificationResult verification_result_from_json(const Json& j);

}  // namespace ssi::agent
