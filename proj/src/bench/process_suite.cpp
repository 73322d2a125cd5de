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
#include "ssi/bench/process_suite.hpp"

#include <chrono>
#include <functional>

#include "ssi/bench/runner.hpp"
#include "ssi/common/error.hpp"
#include "ssi/common/http.hpp"

namespace ssi::bench {

namespace {

double timed(const char* phase, const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("phase ") + phase + ": " + e.what());
  }
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Json to_json(const PhaseDurations& d) {
  return {{"startup", d.startup_s},
          {"connection", d.connection_s},
          {"registerSchema", d.register_schema_s},
          {"exchangeCredential", d.exchange_credential_s}};
}

PhaseDurations run_process_suite(std::size_t n_exchanges, const EnvironmentSpec& spec) {
  PhaseDurations d;
  std::unique_ptr<Environment> env;
  d.startup_s = timed("startup", [&] {
    env = Environment::start(spec);
    env->enroll_endorsers();
  });
  const Targets t{env->by_role("issuer").admin_url(), env->by_role("holder").admin_url(),
                  env->by_role("verifier").admin_url()};

  std::string conn;
  d.connection_s = timed("connection", [&] {
    const auto inv = http::post_json(t.issuer, "/connections/create-invitation", Json::object());
    http::post_json(t.holder, "/connections/receive-invitation?wait=true",
                    {{"invitationUrl", inv.at("invitationUrl")}, {"accept", true}});
    conn = inv.at("connId").get<std::string>();
    http::get_json(t.issuer, "/connections/" + conn + "?wait=true");
  });

  std::string cred_def;
  d.register_schema_s = timed("registerSchema", [&] {
    const auto schema = http::post_json(
        t.issuer, "/ledger/register-schema",
        {{"name", "PID"}, {"version", "1.0"}, {"attrNames", {"fullName", "licenseNumber", "designation"}}});
    cred_def = http::post_json(t.issuer, "/ledger/register-cred-def",
                               {{"schemaId", schema.at("schemaId")}, {"tag", "default"}, {"supportRevocation", true}})
                   .at("credDefId")
                   .get<std::string>();
  });

  d.exchange_credential_s = timed("exchangeCredential", [&] {
    for (std::size_t i = 0; i < n_exchanges; ++i) {
      const auto rec = http::post_json(t.issuer, "/issue-credential/send-offer?wait=true",
                                       {{"connId", conn},
                                        {"credDefId", cred_def},
                                        {"values",
                                         {{"fullName", "Holder " + std::to_string(i)},
                                          {"licenseNumber", "LN-" + std::to_string(i)},
                                          {"designation", "nurse"}}}});
      if (rec.at("state") != "ACKED") {
        throw Error(ErrorCode::InvalidState, "exchange " + std::to_string(i) + " ended " + rec.at("state").get<std::string>());
      }
    }
  });
  env->stop();
  return d;
}

}  // namespace ssi::bench
