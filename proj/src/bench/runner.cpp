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
#include "ssi/bench/runner.hpp"

#include <chrono>
#include <thread>

#include "ssi/common/error.hpp"
#include "ssi/common/http.hpp"
#include "ssi/common/json_util.hpp"

namespace ssi::bench {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kBenchAttrs = {"fullName", "licenseNumber", "designation"};

std::map<std::string, std::string> values_for(std::size_t i) {
  return {{"fullName", "Bench Holder " + std::to_string(i)},
          {"licenseNumber", "LN-" + std::to_string(100000 + i)},
          {"designation", "physician"}};
}

void expect_state(const Json& rec, const std::string& state) {
  if (rec.at("state") != state) {
    throw Error(ErrorCode::InvalidState, "ended " + rec.at("state").get<std::string>() + ": " +
                                             rec.value("problem", std::string()));
  }
}

std::string connect(const std::string& inviter, const std::string& invitee) {
  const auto inv = http::post_json(inviter, "/connections/create-invitation", Json::object());
  http::post_json(invitee, "/connections/receive-invitation?wait=true",
                  {{"invitationUrl", inv.at("invitationUrl")}, {"accept", true}});
  const auto id = inv.at("connId").get<std::string>();
  expect_state(http::get_json(inviter, "/connections/" + id + "?wait=true"), "ACTIVE");
  return id;
}

double ms_since(Clock::time_point t0, Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(t - t0).count();
}

}  // namespace

Prepared prepare(const Targets& t, Scenario s) {
  Prepared p;
  p.run_tag = new_uuid().substr(0, 8);
  p.requested_attrs = {"fullName", "licenseNumber"};
  if (s == Scenario::ConnectionInvitation || s == Scenario::RegisterSchema) return p;

  const auto schema = http::post_json(t.issuer, "/ledger/register-schema",
                                      {{"name", "BenchPID_" + p.run_tag}, {"version", "1.0"}, {"attrNames", kBenchAttrs}});
  p.cred_def_id = http::post_json(t.issuer, "/ledger/register-cred-def",
                                  {{"schemaId", schema.at("schemaId")}, {"tag", "bench"}, {"supportRevocation", false}})
                      .at("credDefId")
                      .get<std::string>();
  p.issuer_conn = connect(t.issuer, t.holder);
  if (s == Scenario::IssueCredential) return p;

  expect_state(http::post_json(t.issuer, "/issue-credential/send-offer?wait=true",
                               {{"connId", p.issuer_conn}, {"credDefId", p.cred_def_id}, {"values", values_for(0)}}),
               "ACKED");
  p.verifier_conn = connect(t.verifier, t.holder);
  return p;
}

void perform(const Targets& t, const Prepared& p, Scenario s, std::size_t index) {
  switch (s) {
    case Scenario::ConnectionInvitation:
      connect(t.issuer, t.holder);
      return;
    case Scenario::RegisterSchema:
      http::post_json(t.issuer, "/ledger/register-schema",
                      {{"name", "BenchSchema_" + p.run_tag + "_" + std::to_string(index)},
                       {"version", "1.0"},
                       {"attrNames", kBenchAttrs}});
      return;
    case Scenario::IssueCredential:
      expect_state(http::post_json(t.issuer, "/issue-credential/send-offer?wait=true",
                                   {{"connId", p.issuer_conn}, {"credDefId", p.cred_def_id}, {"values", values_for(index)}}),
                   "ACKED");
      return;
    case Scenario::SendProofRequest:
      http::post_json(t.verifier, "/present-proof/send-request",
                      {{"connId", p.verifier_conn}, {"credDefId", p.cred_def_id}, {"requestedAttrs", p.requested_attrs}});
      return;
    case Scenario::PresentProof:
      expect_state(http::post_json(t.verifier, "/present-proof/send-request?wait=true",
                                   {{"connId", p.verifier_conn},
                                    {"credDefId", p.cred_def_id},
                                    {"requestedAttrs", p.requested_attrs}}),
                   "VERIFIED_TRUE");
      return;
  }
}

RunResult run(const LoadProfile& profile, const Targets& targets) {
  validate(profile);
  for (const auto& url : {targets.issuer, targets.holder, targets.verifier}) {
    try {
      http::get_json(url, "/status", std::chrono::seconds(5));
    } catch (const Error& e) {
      throw Error(ErrorCode::TargetDown, url + ": " + e.what());
    }
  }
  const auto prepared = prepare(targets, profile.scenario);

  SampleSink sink;
  const auto t0 = Clock::now();
  const auto one = [&](std::size_t i) {
    const auto start = Clock::now();
    Sample s;
    s.index = i;
    s.start_ms = ms_since(t0, start);
    try {
      perform(targets, prepared, profile.scenario, i);
    } catch (const std::exception& e) {
      s.ok = false;
      s.error = e.what();
    }
    s.latency_ms = ms_since(start, Clock::now());
    sink.add(std::move(s));
  };

  if (profile.mode == Mode::Sequential) {
    for (std::size_t i = 0; i < profile.n_requests; ++i) one(i);
  } else {
    const double step_ms = profile.rampup_s * 1000.0 / static_cast<double>(profile.n_requests);
    std::vector<std::thread> workers;
    workers.reserve(profile.n_requests);
    for (std::size_t k = 0; k < profile.n_requests; ++k) {
      workers.emplace_back([&, k] {
        std::this_thread::sleep_until(t0 + std::chrono::duration_cast<Clock::duration>(
                                               std::chrono::duration<double, std::milli>(step_ms * k)));
        one(k);
      });
    }
    for (auto& w : workers) w.join();
  }
  const double wall = ms_since(t0, Clock::now());
  auto samples = sink.take();
  return {summarize(profile, samples, wall), std::move(samples)};
}

}  // namespace ssi::bench
