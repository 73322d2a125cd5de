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
#include "ssi/authz/http.hpp"

#include "ssi/common/http.hpp"

namespace ssi::authz {

void mount(agent::Agent& verifier, Provider& provider) {
  verifier.mount([&verifier, &provider](httplib::Server& s) {
    s.Post("/authorize", http::guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto body = http::parse_body(req);
             const auto ex = verifier.pres_exchange(body.at("presExId").get<std::string>());
             const auto subject = verifier.connection(ex.conn_id).their_did;
             http::send_json(res, {{"accessToken", provider.authorize(ex, subject)}, {"tokenType", "Bearer"}});
           }));
    s.Post("/introspect", http::guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto body = http::parse_body(req);
             http::send_json(res, to_json(provider.introspect(body.at("token").get<std::string>())));
           }));
    s.Get(R"(/resources/([^/]+))", http::guarded([&](const httplib::Request& req, httplib::Response& res) {
            const auto auth = req.get_header_value("Authorization");
            if (auth.rfind("Bearer ", 0) != 0) throw Error(ErrorCode::InvalidToken, "missing bearer token");
            const auto claims = provider.validate_token(auth.substr(7));
            const std::string id = req.matches[1];
            if (!provider.check_access(claims, id)) {
              throw Error(ErrorCode::NoRole, "roles do not allow " + id);
            }
            http::send_json(res, {{"resourceId", id}, {"access", "allow"}, {"sub", claims.sub}, {"roles", claims.roles}});
          }));
  });
}

}  // namespace ssi::authz
