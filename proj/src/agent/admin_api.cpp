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
#include <algorithm>

#include "ssi/agent/agent.hpp"
#include "ssi/common/error.hpp"
#include "ssi/common/http.hpp"

namespace ssi::agent {

namespace {

using httplib::Request;
using httplib::Response;

bool wants_wait(const Request& req) { return req.get_param_value("wait") == "true"; }

template <typename T>
Json list_json(const std::vector<T>& items) {
  Json out = Json::array();
  for (const auto& i : items) out.push_back(to_json(i));
  return out;
}

}  // namespace

void AdminApi::install(Agent& a) {
  auto& s = a.admin_;

  // counts concurrent admin calls for the load-balancing check
  const auto route = [&a](auto handler) {
    return http::guarded([&a, handler](const Request& req, Response& res) {
      const int now = ++a.inflight_;
      int seen = a.max_inflight_.load();
      while (now > seen && !a.max_inflight_.compare_exchange_weak(seen, now)) {
      }
      struct Leave {
        Agent& agent;
        ~Leave() { --agent.inflight_; }
      } leave{a};
      handler(req, res);
    });
  };

  s.Post("/connections/create-invitation", route([&a](const Request& req, Response& res) {
           const auto body = req.body.empty() ? Json::object() : http::parse_body(req);
           std::optional<std::uint32_t> difficulty;
           if (body.contains("puzzleDifficulty")) difficulty = body["puzzleDifficulty"].get<std::uint32_t>();
           const auto inv = a.create_invitation(difficulty);
           http::send_json(res, {{"connId", inv.conn_id}, {"invitationUrl", inv.url}, {"invitation", to_json(inv.invitation)}});
         }));
  s.Post("/connections/receive-invitation", route([&a](const Request& req, Response& res) {
           const auto body = http::parse_body(req);
           const auto rec = a.receive_invitation(body.at("invitationUrl").get<std::string>(), body.value("accept", true),
                                                 wants_wait(req));
           http::send_json(res, to_json(rec));
         }));
  s.Get("/connections", route([&a](const Request&, Response& res) { http::send_json(res, list_json(a.connections())); }));
  s.Get(R"(/connections/([^/]+))", route([&a](const Request& req, Response& res) {
          const std::string id = req.matches[1];
          http::send_json(res, to_json(wants_wait(req) ? a.wait_connection(id) : a.connection(id)));
        }));
  s.Post(R"(/connections/([^/]+)/enroll)", route([&a](const Request& req, Response& res) {
           const auto body = http::parse_body(req);
           const auto receipt = a.enroll(req.matches[1], ledger::role_from_string(body.at("role").get<std::string>()));
           http::send_json(res, to_json(receipt));
         }));

  s.Post("/ledger/register-schema", route([&a](const Request& req, Response& res) {
           const auto body = http::parse_body(req);
           const auto id = a.register_schema(body.at("name").get<std::string>(), body.at("version").get<std::string>(),
                                             body.at("attrNames").get<std::vector<std::string>>());
           http::send_json(res, {{"schemaId", id}});
         }));
  s.Post("/ledger/register-cred-def", route([&a](const Request& req, Response& res) {
           const auto body = http::parse_body(req);
           const auto cd = a.register_cred_def(body.at("schemaId").get<std::string>(), body.value("tag", std::string("default")),
                                               body.value("supportRevocation", false),
                                               body.value("maxCredNum", std::uint32_t{1024}));
           Json out{{"credDefId", cd.cred_def_id}};
           if (!cd.rev_reg_id.empty()) out["revRegId"] = cd.rev_reg_id;
           http::send_json(res, out);
         }));

  s.Post("/issue-credential/send-offer", route([&a](const Request& req, Response& res) {
           const auto body = http::parse_body(req);
           auto rec = a.send_offer(body.at("connId").get<std::string>(), body.at("credDefId").get<std::string>(),
                                   body.at("values").get<std::map<std::string, std::string>>());
           if (wants_wait(req)) rec = a.wait_cred_exchange(rec.cred_ex_id);
           http::send_json(res, to_json(rec));
         }));
  s.Post(R"(/issue-credential/([^/]+)/respond)", route([&a](const Request& req, Response& res) {
           const auto body = req.body.empty() ? Json::object() : http::parse_body(req);
           auto rec = a.respond_offer(req.matches[1], body.value("accept", true));
           if (wants_wait(req)) rec = a.wait_cred_exchange(rec.cred_ex_id);
           http::send_json(res, to_json(rec));
         }));
  s.Get("/issue-credential/records", route([&a](const Request&, Response& res) {
          http::send_json(res, list_json(a.cred_exchanges()));
        }));
  s.Get(R"(/issue-credential/records/([^/]+))", route([&a](const Request& req, Response& res) {
          http::send_json(res, to_json(a.cred_exchange(req.matches[1])));
        }));
  s.Get("/credentials", route([&a](const Request&, Response& res) { http::send_json(res, list_json(a.credentials())); }));

  s.Post("/present-proof/send-request", route([&a](const Request& req, Response& res) {
           const auto body = http::parse_body(req);
           std::optional<std::int64_t> at;
           if (body.contains("nonRevokedAtTime")) at = body["nonRevokedAtTime"].get<std::int64_t>();
           auto rec = a.send_proof_request(body.at("connId").get<std::string>(), body.at("credDefId").get<std::string>(),
                                           body.at("requestedAttrs").get<std::vector<std::string>>(), at);
           if (wants_wait(req)) rec = a.wait_pres_exchange(rec.pres_ex_id);
           http::send_json(res, to_json(rec));
         }));
  s.Post(R"(/present-proof/([^/]+)/respond)", route([&a](const Request& req, Response& res) {
           const auto body = req.body.empty() ? Json::object() : http::parse_body(req);
           ProofDecision d;
           d.accept = body.value("accept", true);
           d.credential_id = body.value("credentialId", std::string());
           d.reveal_attrs = body.value("revealAttrs", std::vector<std::string>{});
           auto rec = a.respond_proof_request(req.matches[1], d);
           if (wants_wait(req)) rec = a.wait_pres_exchange(rec.pres_ex_id);
           http::send_json(res, to_json(rec));
         }));
  s.Post(R"(/present-proof/([^/]+)/verify-presentation)", route([&a](const Request& req, Response& res) {
           http::send_json(res, to_json(a.verify_presentation(req.matches[1])));
         }));
  s.Get("/present-proof/records", route([&a](const Request&, Response& res) {
          http::send_json(res, list_json(a.pres_exchanges()));
        }));
  s.Get(R"(/present-proof/records/([^/]+))", route([&a](const Request& req, Response& res) {
          http::send_json(res, to_json(a.pres_exchange(req.matches[1])));
        }));

  s.Post("/revocation/revoke", route([&a](const Request& req, Response& res) {
           const auto body = http::parse_body(req);
           http::send_json(res, to_json(a.revoke(body.at("credExId").get<std::string>(), body.value("publish", true))));
         }));
  s.Post("/revocation/refresh", route([&a](const Request&, Response& res) {
           http::send_json(res, {{"revoked", a.refresh_revocations()}});
         }));

  s.Get("/status", http::guarded([&a](const Request&, Response& res) {
          http::send_json(res, {{"label", a.label()},
                                {"publicDid", a.public_did()},
                                {"endpoint", a.endpoint()},
                                {"inflight", a.inflight()},
                                {"maxInflight", a.max_inflight()}});
        }));
  s.Post("/status/reset", http::guarded([&a](const Request&, Response& res) {
           a.reset_max_inflight();
           http::send_json(res, {{"maxInflight", a.max_inflight()}});
         }));

  // server-sent events; ?since=<seq> replays history after that sequence number
  s.Get("/events", [&a](const Request& req, Response& res) {
    std::uint64_t since = 0;
    if (req.has_param("since")) since = std::stoull(req.get_param_value("since"));
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [&a, since](std::size_t, httplib::DataSink& sink) mutable {
      if (a.events_.closed()) {
        sink.done();
        return true;
      }
      const auto batch = a.events_.wait_after(since, std::chrono::seconds(15));
      std::string chunk;
      if (batch.empty()) chunk = ": keepalive\n\n";
      for (const auto& e : batch) {
        chunk += "id: " + std::to_string(e.seq) + "\nevent: " + e.topic + "\ndata: " + to_json(e).dump() + "\n\n";
        since = e.seq;
      }
      if (!sink.write(chunk.data(), chunk.size())) return false;
      return true;
    });
  });
}

}  // namespace ssi::agent
