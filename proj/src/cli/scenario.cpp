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
#include "ssi/cli/scenario.hpp"

#include <algorithm>
#include <optional>

#include <httplib.h>

#include "ssi/authz/http.hpp"
#include "ssi/authz/provider.hpp"
#include "ssi/common/http.hpp"

namespace ssi::cli {
namespace {

using agent::Agent;
using agent::PresExState;

const std::vector<std::string> kRequested{"fullName", "licenseNumber"};
constexpr const char* kResource = "patient-records";

void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

void wait_for(Agent& a, const std::function<bool()>& pred, const std::string& what) {
  if (!a.events().wait_until(pred, a.options().wait_timeout)) throw Error(ErrorCode::Timeout, what);
}

/// Returns the inviter's connection id once both sides are ACTIVE.
std::pair<std::string, std::string> connect(Agent& inviter, Agent& invitee) {
  const auto inv = inviter.create_invitation();
  const auto mine = invitee.receive_invitation(inv.url, true, true);
  const auto theirs = inviter.wait_connection(inv.conn_id);
  require(mine.state == agent::ConnState::Active && theirs.state == agent::ConnState::Active,
          ErrorCode::HandshakeFailure, inviter.label() + " <-> " + invitee.label() + " did not become ACTIVE");
  return {inv.conn_id, mine.conn_id};
}

template <typename Records>
std::optional<std::string> by_thread(const Records& rs, const std::string& thread_id) {
  for (const auto& r : rs) {
    if (r.thread_id != thread_id) continue;
    if constexpr (requires { r.cred_ex_id; }) {
      return r.cred_ex_id;
    } else {
      return r.pres_ex_id;
    }
  }
  return std::nullopt;
}

/// Request, let the patient answer with exactly the requested attributes, and
/// hold the presentation unverified on the hospital side.
std::string request_presentation(Agent& hospital, Agent& patient, const std::string& conn_id,
                                 const std::string& cred_def_id) {
  const auto px = hospital.send_proof_request(conn_id, cred_def_id, kRequested);
  std::string theirs;
  wait_for(patient, [&] {
    auto id = by_thread(patient.pres_exchanges(), px.thread_id);
    if (id) theirs = *id;
    return id.has_value();
  }, "proof request never reached " + patient.label());
  patient.respond_proof_request(theirs, {true, "", {}});
  wait_for(hospital, [&] {
    const auto s = hospital.pres_exchange(px.pres_ex_id).state;
    return s == PresExState::PresentationReceived || s == PresExState::Declined;
  }, "no presentation from " + patient.label());
  const auto held = hospital.pres_exchange(px.pres_ex_id);
  require(held.state == PresExState::PresentationReceived, ErrorCode::Declined, "presentation declined: " + held.problem);
  return px.pres_ex_id;
}

/// Checks the bytes that crossed the wire: the requested values appear, the
/// other attributes' values do not.
std::vector<std::string> check_disclosure(const Json& presentation, const SchemaFixture& pid) {
  const auto bytes = presentation.dump();
  std::vector<std::string> revealed;
  for (const auto& [name, _] : presentation.at("revealed").items()) revealed.push_back(name);
  std::sort(revealed.begin(), revealed.end());
  auto want = kRequested;
  std::sort(want.begin(), want.end());
  require(revealed == want, ErrorCode::InvalidState, "presentation reveals " + Json(revealed).dump());
  for (const auto& attr : pid.attr_names) {
    const auto& value = pid.sample.at(attr);
    const bool present = bytes.find(value) != std::string::npos;
    const bool requested = std::find(want.begin(), want.end(), attr) != want.end();
    require(present == requested, ErrorCode::InvalidState,
            "value of " + attr + (requested ? " missing from" : " leaked into") + " the presentation");
  }
  return revealed;
}

httplib::Result get_resource(const Agent& hospital, const std::string& token) {
  const auto [base, _] = http::split_url(hospital.admin_url());
  httplib::Client cli(base);
  cli.set_read_timeout(std::chrono::seconds(30));
  return cli.Get(std::string("/resources/") + kResource, {{"Authorization", "Bearer " + token}});
}

}  // namespace

Json strip_ids(const Json& line) {
  if (line.is_array()) {
    Json out = Json::array();
    for (const auto& x : line) out.push_back(strip_ids(x));
    return out;
  }
  if (!line.is_object()) return line;
  Json out = Json::object();
  for (const auto& [k, v] : line.items()) {
    const bool id = k == "did" || (k.size() > 2 && k.ends_with("Id")) || k.ends_with("Did");
    if (!id) out[k] = strip_ids(v);
  }
  return out;
}

std::vector<Json> run_demo(const ScenarioConfig& config, const DemoOptions& o) {
  std::vector<Json> transcript;
  std::string step = "bootstrap";
  auto emit = [&](Json line) {
    line["step"] = step;
    transcript.push_back(line);
    if (o.on_event) o.on_event(line);
  };

  // declared before the environment so it outlives the routes mounted on it
  std::optional<authz::Provider> provider;
  std::unique_ptr<bench::Environment> env;
  try {
    const auto& hospital_cfg = config.by_role("verifier");
    const auto& pid = config.schema("PID");
    for (const auto& attr : pid.attr_names) {
      require(pid.sample.contains(attr), ErrorCode::Malformed, "PID fixture has no sample " + attr);
    }
    provider.emplace(crypto::generate_keypair(), authz::load_rules(config.authz_rules_path), system_clock());

    auto spec = environment_spec(config);
    spec.attach_url = o.attach_url;
    spec.ledger_port = -1;
    for (auto& a : spec.agents) {
      // the hospital verifies on its own schedule; see the second proof below
      if (a.role == "verifier") a.auto_verify = false;
    }
    spec.before_start = [&](Agent& a, const bench::AgentSpec& s) {
      if (s.label == hospital_cfg.label) authz::mount(a, *provider);
    };
    env = bench::Environment::start(spec);
    Json boot{{"mode", o.attach_url.empty() ? "local" : "attach"}, {"stewardDid", env->steward_did()}};
    if (env->pool()) {
      const auto nym = env->ledger()->get_nym(env->steward_did());
      require(nym.role == ledger::Role::Steward, ErrorCode::InvalidState, "steward NYM missing");
      boot["nodes"] = env->pool()->size();
      boot["quorum"] = env->pool()->quorum();
    }
    emit(boot);
    if (o.after_bootstrap) o.after_bootstrap(*env);

    auto& government = env->by_role("issuer");
    auto& patient = env->by_role("holder");
    auto& hospital = env->agent(hospital_cfg.label);

    step = "enroll";
    env->enroll_endorsers();
    Json endorsers = Json::array();
    for (const auto& a : config.agents) {
      if (a.role != "issuer" && a.role != "verifier") continue;
      const auto nym = env->ledger()->get_nym(env->agent(a.label).public_did());
      require(nym.role == ledger::Role::Endorser, ErrorCode::InvalidState, a.label + " is not an endorser");
      endorsers.push_back({{"label", a.label}, {"role", ledger::to_string(nym.role)}});
    }
    emit({{"endorsers", endorsers}});

    step = "register-schema";
    const auto schema_id = government.register_schema(pid.name, pid.version, pid.attr_names);
    emit({{"issuer", government.label()}, {"schemaId", schema_id}, {"name", pid.name}, {"attrNames", pid.attr_names}});

    step = "register-cred-def";
    const auto cd = government.register_cred_def(schema_id, "default", true, 64);
    provider->set_rules(authz::load_rules(config.authz_rules_path, {{pid.name, cd.cred_def_id}}));
    emit({{"credDefId", cd.cred_def_id}, {"revRegId", cd.rev_reg_id}, {"supportRevocation", true}});

    step = "connect";
    const auto [gov_conn, _] = connect(government, patient);
    emit({{"inviter", government.label()}, {"invitee", patient.label()}, {"state", "ACTIVE"}});

    step = "issue";
    const auto offer = government.send_offer(gov_conn, cd.cred_def_id, pid.sample);
    std::string holder_ex;
    wait_for(patient, [&] {
      auto id = by_thread(patient.cred_exchanges(), offer.thread_id);
      if (id) holder_ex = *id;
      return id.has_value();
    }, "offer never reached " + patient.label());
    patient.respond_offer(holder_ex, true);
    const auto held = patient.wait_cred_exchange(holder_ex);
    const auto issued = government.wait_cred_exchange(offer.cred_ex_id);
    require(held.state == agent::CredExState::Stored && issued.state == agent::CredExState::Acked,
            ErrorCode::InvalidState,
            std::string("exchange ended ") + std::string(agent::to_string(held.state)) + "/" +
                std::string(agent::to_string(issued.state)));
    emit({{"holderState", agent::to_string(held.state)},
          {"issuerState", agent::to_string(issued.state)},
          {"attributes", pid.attr_names.size()}});

    step = "connect";
    const auto [hosp_conn, __] = connect(hospital, patient);
    emit({{"inviter", hospital.label()}, {"invitee", patient.label()}, {"state", "ACTIVE"}});

    step = "proof";
    const auto first = request_presentation(hospital, patient, hosp_conn, cd.cred_def_id);
    const auto revealed = check_disclosure(*hospital.pres_exchange(first).presentation, pid);
    const auto v1 = hospital.verify_presentation(first);
    require(v1.state == PresExState::VerifiedTrue, ErrorCode::NotVerified,
            "first presentation: " + (v1.result ? std::string(anoncreds::to_string(v1.result->reason)) : v1.problem));
    emit({{"requested", kRequested},
          {"revealed", revealed},
          {"hidden", pid.attr_names.size() - revealed.size()},
          {"state", agent::to_string(v1.state)},
          {"verified", true}});

    step = "authorize";
    const auto granted = http::post_json(hospital.admin_url(), "/authorize", {{"presExId", first}});
    const auto token = granted.at("accessToken").get<std::string>();
    const auto claims = provider->introspect(token);
    emit({{"tokenType", granted.at("tokenType")}, {"roles", claims.roles}, {"disclosed", claims.disclosed}});

    step = "access";
    const auto allowed = get_resource(hospital, token);
    require(allowed && allowed->status == 200, ErrorCode::NoRole,
            "resource refused with status " + std::to_string(allowed ? allowed->status : -1));
    emit({{"resource", kResource}, {"status", allowed->status}, {"allowed", true}});

    // The second presentation is built while the credential is still valid,
    // so the verdict below comes from the ledger and not from the holder.
    step = "second-proof";
    const auto second = request_presentation(hospital, patient, hosp_conn, cd.cred_def_id);
    emit({{"state", agent::to_string(hospital.pres_exchange(second).state)}});

    if (!o.skip_revoke) {
      step = "revoke";
      const auto r = government.revoke(offer.cred_ex_id, true);
      require(r.revoked, ErrorCode::InvalidState, "issuer record not marked revoked");
      emit({{"issuer", government.label()}, {"revRegId", r.rev_reg_id}, {"published", true}});
    }

    step = "post-revocation-access";
    const auto v2 = hospital.verify_presentation(second);
    Json access{{"resource", kResource}};
    try {
      const auto again = http::post_json(hospital.admin_url(), "/authorize", {{"presExId", second}});
      const auto res = get_resource(hospital, again.at("accessToken").get<std::string>());
      access["authorized"] = true;
      access["status"] = res ? res->status : -1;
      access["allowed"] = res && res->status == 200;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotVerified && e.code() != ErrorCode::NoRole) throw;
      access["authorized"] = false;
      access["error"] = to_string(e.code());
      access["allowed"] = false;
    }
    require(access["allowed"].get<bool>() == o.skip_revoke, ErrorCode::InvalidState,
            o.skip_revoke ? "access refused without revocation" : "access granted after revocation");
    emit(access);

    step = "post-revocation-verify";
    const bool verified = v2.state == PresExState::VerifiedTrue;
    require(verified == o.skip_revoke, ErrorCode::InvalidState,
            verified ? "revoked credential still verifies" : "unrevoked credential failed verification");
    Json last{{"state", agent::to_string(v2.state)}, {"verified", verified}};
    if (v2.result) last["reason"] = anoncreds::to_string(v2.result->reason);
    emit(last);

    if (o.before_stop) o.before_stop(*env);
  } catch (const StepError&) {
    throw;
  } catch (const Error& e) {
    throw StepError(step, e);
  } catch (const Json::exception& e) {
    throw StepError(step, Error(ErrorCode::Malformed, e.what()));
  } catch (const std::exception& e) {
    throw StepError(step, Error(ErrorCode::InvalidState, e.what()));
  }
  return transcript;
}

}  // namespace ssi::cli
