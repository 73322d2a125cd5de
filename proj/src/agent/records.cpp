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
#include "ssi/agent/records.hpp"

#include <array>
#include <bit>

#include "ssi/common/encoding.hpp"
#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::agent {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const std::array<std::string_view, N>& names, const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  throw Error(ErrorCode::Malformed, std::string("unknown ") + what + " " + std::string(s));
}

constexpr std::array<std::string_view, 5> kConnNames = {"INVITED", "REQUESTED", "RESPONDED", "ACTIVE", "ABANDONED"};
constexpr std::array<std::string_view, 8> kCredExNames = {"OFFER_SENT",        "OFFER_RECEIVED", "REQUEST_SENT",
                                                          "REQUEST_RECEIVED",  "CREDENTIAL_ISSUED", "STORED",
                                                          "ACKED",             "DECLINED"};
constexpr std::array<std::string_view, 7> kPresExNames = {"REQUEST_SENT",      "REQUEST_RECEIVED", "PRESENTATION_SENT",
                                                          "PRESENTATION_RECEIVED", "VERIFIED_TRUE", "VERIFIED_FALSE",
                                                          "DECLINED"};

}  // namespace

std::string_view to_string(ConnState s) { return kConnNames.at(static_cast<std::size_t>(s)); }
std::string_view to_string(CredExState s) { return kCredExNames.at(static_cast<std::size_t>(s)); }
std::string_view to_string(PresExState s) { return kPresExNames.at(static_cast<std::size_t>(s)); }
ConnState conn_state_from_string(std::string_view s) { return parse_enum<ConnState>(s, kConnNames, "connection state"); }
CredExState cred_ex_state_from_string(std::string_view s) {
  return parse_enum<CredExState>(s, kCredExNames, "credential exchange state");
}
PresExState pres_ex_state_from_string(std::string_view s) {
  return parse_enum<PresExState>(s, kPresExNames, "presentation exchange state");
}

bool transition_allowed(ExchangeRole, ConnState from, ConnState to) {
  using S = ConnState;
  if (is_terminal(from)) return false;
  if (to == S::Abandoned) return true;
  return static_cast<int>(to) == static_cast<int>(from) + 1;
}

bool transition_allowed(ExchangeRole role, CredExState from, CredExState to) {
  using S = CredExState;
  if (is_terminal(from)) return false;
  const bool issuer_only = from == S::OfferSent || from == S::RequestReceived;
  const bool holder_only = from == S::OfferReceived || from == S::RequestSent;
  if (role == ExchangeRole::Initiator ? holder_only : issuer_only) return false;
  if (to == S::Declined) return true;
  if (role == ExchangeRole::Initiator) {
    return (from == S::OfferSent && to == S::RequestReceived) || (from == S::RequestReceived && to == S::CredentialIssued) ||
           (from == S::CredentialIssued && to == S::Acked);
  }
  return (from == S::OfferReceived && to == S::RequestSent) || (from == S::RequestSent && to == S::CredentialIssued) ||
         (from == S::CredentialIssued && to == S::Stored);
}

bool transition_allowed(ExchangeRole role, PresExState from, PresExState to) {
  using S = PresExState;
  if (is_terminal(from)) return false;
  const S middle = role == ExchangeRole::Initiator ? S::PresentationReceived : S::PresentationSent;
  const S first = role == ExchangeRole::Initiator ? S::RequestSent : S::RequestReceived;
  if (from != first && from != middle) return false;
  if (to == S::Declined) return true;
  return (from == first && to == middle) || (from == middle && (to == S::VerifiedTrue || to == S::VerifiedFalse));
}

ConnState initial_state(ExchangeRole, ConnState) { return ConnState::Invited; }
CredExState initial_state(ExchangeRole role, CredExState) {
  return role == ExchangeRole::Initiator ? CredExState::OfferSent : CredExState::OfferReceived;
}
PresExState initial_state(ExchangeRole role, PresExState) {
  return role == ExchangeRole::Initiator ? PresExState::RequestSent : PresExState::RequestReceived;
}

bool is_terminal(ConnState s) { return s == ConnState::Active || s == ConnState::Abandoned; }
bool is_terminal(CredExState s) { return s == CredExState::Stored || s == CredExState::Acked || s == CredExState::Declined; }
bool is_terminal(PresExState s) {
  return s == PresExState::VerifiedTrue || s == PresExState::VerifiedFalse || s == PresExState::Declined;
}

Json to_json(const Invitation& inv) {
  Json j = {{"label", inv.label},
            {"recipientKey", crypto::verkey_string(inv.recipient_key)},
            {"serviceEndpoint", inv.service_endpoint},
            {"nonce", bytes_json(inv.nonce)}};
  if (inv.puzzle) j["puzzle"] = {{"difficulty", inv.puzzle->difficulty}, {"challenge", bytes_json(inv.puzzle->challenge)}};
  return j;
}

Invitation invitation_from_json(const Json& j) {
  try {
    Invitation inv;
    inv.label = j.at("label").get<std::string>();
    inv.recipient_key = crypto::key_from_verkey(j.at("recipientKey").get<std::string>());
    inv.service_endpoint = j.at("serviceEndpoint").get<std::string>();
    inv.nonce = json_array<24>(j.at("nonce"));
    if (j.contains("puzzle")) {
      Puzzle p{j["puzzle"].at("difficulty").get<std::uint32_t>(), json_array<16>(j["puzzle"].at("challenge"))};
      if (p.difficulty > 24) throw Error(ErrorCode::Malformed, "puzzle difficulty above 24 bits");
      inv.puzzle = p;
    }
    return inv;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("invitation: ") + e.what());
  }
}

std::string invitation_url(const Invitation& inv) {
  return inv.service_endpoint + "?oob=" + encoding::base64url(as_bytes(canonical(to_json(inv))));
}

Invitation parse_invitation_url(std::string_view url) {
  const auto pos = url.find("?oob=");
  if (pos == std::string_view::npos) throw Error(ErrorCode::Malformed, "invitation URL lacks ?oob=");
  Json j;
  try {
    j = Json::parse(ssi::to_string(encoding::from_base64url(url.substr(pos + 5))));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("invitation payload: ") + e.what());
  }
  return invitation_from_json(j);
}

bool puzzle_solved(const Puzzle& p, const crypto::PublicKey& solver, std::uint64_t counter) {
  Bytes buf;
  append(buf, p.challenge);
  append(buf, solver);
  append_u64(buf, counter);
  const auto h = crypto::tagged_hash(crypto::Domain::Puzzle, buf);
  std::uint32_t zeros = 0;
  for (auto byte : h) {
    if (byte == 0) {
      zeros += 8;
      if (zeros >= p.difficulty) break;
      continue;
    }
    zeros += static_cast<std::uint32_t>(std::countl_zero(byte));
    break;
  }
  return zeros >= p.difficulty;
}

std::uint64_t solve_puzzle(const Puzzle& p, const crypto::PublicKey& solver) {
  if (p.difficulty > 24) throw Error(ErrorCode::InvalidArgument, "puzzle difficulty above 24 bits");
  for (std::uint64_t counter = 0;; ++counter) {
    if (puzzle_solved(p, solver, counter)) return counter;
  }
}

namespace {

std::string_view role_name(ExchangeRole r) { return r == ExchangeRole::Initiator ? "initiator" : "responder"; }
ExchangeRole role_from(const Json& j) {
  return j.get<std::string>() == "initiator" ? ExchangeRole::Initiator : ExchangeRole::Responder;
}

}  // namespace

Json to_json(const ConnectionRecord& r) {
  Json j = {{"connId", r.conn_id},
            {"role", role_name(r.role)},
            {"state", to_string(r.state)},
            {"theirLabel", r.their_label},
            {"myDid", r.my_did},
            {"myVerkey", crypto::verkey_string(r.my_key)},
            {"theirDid", r.their_did},
            {"theirVerkey", r.their_did.empty() ? "" : crypto::verkey_string(r.their_key)},
            {"theirEndpoint", r.their_endpoint},
            {"invitationKey", crypto::verkey_string(r.invitation_key)},
            {"invitationNonce", bytes_json(r.invitation_nonce)},
            {"challenge", bytes_json(r.challenge)},
            {"problem", r.problem},
            {"history", r.history}};
  if (r.puzzle) j["puzzle"] = {{"difficulty", r.puzzle->difficulty}, {"challenge", bytes_json(r.puzzle->challenge)}};
  return j;
}

ConnectionRecord connection_from_json(const Json& j) {
  ConnectionRecord r;
  r.conn_id = j.at("connId").get<std::string>();
  r.role = role_from(j.at("role"));
  r.state = conn_state_from_string(j.at("state").get<std::string>());
  r.their_label = j.at("theirLabel").get<std::string>();
  r.my_did = j.at("myDid").get<std::string>();
  r.my_key = crypto::key_from_verkey(j.at("myVerkey").get<std::string>());
  r.their_did = j.at("theirDid").get<std::string>();
  if (!r.their_did.empty()) r.their_key = crypto::key_from_verkey(j.at("theirVerkey").get<std::string>());
  r.their_endpoint = j.at("theirEndpoint").get<std::string>();
  r.invitation_key = crypto::key_from_verkey(j.at("invitationKey").get<std::string>());
  r.invitation_nonce = json_array<24>(j.at("invitationNonce"));
  r.challenge = json_array<24>(j.at("challenge"));
  r.problem = j.at("problem").get<std::string>();
  r.history = j.at("history").get<std::vector<std::string>>();
  if (j.contains("puzzle")) r.puzzle = Puzzle{j["puzzle"].at("difficulty").get<std::uint32_t>(), json_array<16>(j["puzzle"].at("challenge"))};
  return r;
}

Json to_json(const CredentialExchange& r) {
  return {{"credExId", r.cred_ex_id}, {"threadId", r.thread_id},     {"connId", r.conn_id},
          {"role", role_name(r.role)}, {"state", to_string(r.state)}, {"credDefId", r.cred_def_id},
          {"schemaId", r.schema_id},   {"values", r.values},          {"credentialId", r.credential_id},
          {"revRegId", r.rev_reg_id},  {"revIndex", r.rev_index},     {"revoked", r.revoked},
          {"problem", r.problem},      {"history", r.history}};
}

CredentialExchange cred_ex_from_json(const Json& j) {
  CredentialExchange r;
  r.cred_ex_id = j.at("credExId").get<std::string>();
  r.thread_id = j.at("threadId").get<std::string>();
  r.conn_id = j.at("connId").get<std::string>();
  r.role = role_from(j.at("role"));
  r.state = cred_ex_state_from_string(j.at("state").get<std::string>());
  r.cred_def_id = j.at("credDefId").get<std::string>();
  r.schema_id = j.at("schemaId").get<std::string>();
  r.values = j.at("values").get<std::map<std::string, std::string>>();
  r.credential_id = j.at("credentialId").get<std::string>();
  r.rev_reg_id = j.at("revRegId").get<std::string>();
  r.rev_index = j.at("revIndex").get<std::uint32_t>();
  r.revoked = j.at("revoked").get<bool>();
  r.problem = j.at("problem").get<std::string>();
  r.history = j.at("history").get<std::vector<std::string>>();
  return r;
}

Json to_json(const PresentationExchange& r) {
  return {{"presExId", r.pres_ex_id},
          {"threadId", r.thread_id},
          {"connId", r.conn_id},
          {"role", role_name(r.role)},
          {"state", to_string(r.state)},
          {"request", anoncreds::to_json(r.request)},
          {"presentation", r.presentation ? *r.presentation : Json(nullptr)},
          {"result", r.result ? anoncreds::to_json(*r.result) : Json(nullptr)},
          {"problem", r.problem},
          {"history", r.history}};
}

anoncreds::VerificationResult verification_result_from_json(const Json& j) {
  anoncreds::VerificationResult v;
  v.verified = j.at("verified").get<bool>();
  v.disclosed = j.at("disclosed").get<std::map<std::string, std::string>>();
  const auto reason = j.at("reason").get<std::string>();
  for (int i = 0; i <= static_cast<int>(anoncreds::VerifyReason::NonRevocationProofInvalid); ++i) {
    if (anoncreds::to_string(static_cast<anoncreds::VerifyReason>(i)) == reason) {
      v.reason = static_cast<anoncreds::VerifyReason>(i);
    }
  }
  v.detail = j.value("detail", std::string{});
  return v;
}

PresentationExchange pres_ex_from_json(const Json& j) {
  PresentationExchange r;
  r.pres_ex_id = j.at("presExId").get<std::string>();
  r.thread_id = j.at("threadId").get<std::string>();
  r.conn_id = j.at("connId").get<std::string>();
  r.role = role_from(j.at("role"));
  r.state = pres_ex_state_from_string(j.at("state").get<std::string>());
  r.request = anoncreds::presentation_request_from_json(j.at("request"));
  if (!j.at("presentation").is_null()) r.presentation = j["presentation"];
  if (!j.at("result").is_null()) r.result = verification_result_from_json(j["result"]);
  r.problem = j.at("problem").get<std::string>();
  r.history = j.at("history").get<std::vector<std::string>>();
  return r;
}

Json to_json(const StoredCredential& c) {
  return {{"credentialId", c.credential_id},
          {"credExId", c.cred_ex_id},
          {"credential", anoncreds::to_json(c.credential)},
          {"revoked", c.revoked}};
}

StoredCredential stored_credential_from_json(const Json& j) {
  return {j.at("credentialId").get<std::string>(), j.at("credExId").get<std::string>(),
          anoncreds::credential_from_json(j.at("credential")), j.at("revoked").get<bool>()};
}

}  // namespace ssi::agent
