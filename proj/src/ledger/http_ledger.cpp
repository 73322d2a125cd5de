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
#include "ssi/ledger/http_ledger.hpp"

#include "ssi/common/http.hpp"
#include "ssi/ledger/replay.hpp"

namespace ssi::ledger {

LedgerHttpServer::LedgerHttpServer(std::shared_ptr<LedgerPool> pool)
    : pool_(std::move(pool)), server_(std::make_unique<httplib::Server>()) {
  auto local = std::make_shared<LocalLedger>(pool_);
  auto& s = *server_;
  auto param = [](const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) throw Error(ErrorCode::InvalidArgument, std::string("missing query parameter ") + name);
    return req.get_param_value(name);
  };

  s.Post("/ledger/submit", http::guarded([this](const httplib::Request& req, httplib::Response& res) {
           http::send_json(res, to_json(pool_->submit(transaction_from_json(http::parse_body(req)))));
         }));
  s.Get("/ledger/nym", http::guarded([=](const httplib::Request& req, httplib::Response& res) {
          http::send_json(res, to_json(local->get_nym(param(req, "did"))));
        }));
  s.Get("/ledger/schema", http::guarded([=](const httplib::Request& req, httplib::Response& res) {
          http::send_json(res, to_json(local->get_schema(param(req, "id"))));
        }));
  s.Get("/ledger/cred-def", http::guarded([=](const httplib::Request& req, httplib::Response& res) {
          http::send_json(res, to_json(local->get_cred_def(param(req, "id"))));
        }));
  s.Get("/ledger/rev-reg-def", http::guarded([=](const httplib::Request& req, httplib::Response& res) {
          http::send_json(res, to_json(local->get_rev_reg_def(param(req, "id"))));
        }));
  s.Get("/ledger/rev-reg", http::guarded([=](const httplib::Request& req, httplib::Response& res) {
          std::optional<std::int64_t> at;
          if (req.has_param("atTime")) at = std::stoll(req.get_param_value("atTime"));
          http::send_json(res, to_json(local->get_rev_reg(param(req, "id"), at)));
        }));
  s.Get("/ledger/config", http::guarded([=](const httplib::Request& req, httplib::Response& res) {
          http::send_json(res, {{"key", param(req, "key")}, {"value", local->get_config(param(req, "key"))}});
        }));
  s.Get("/ledger/audit-log", http::guarded([this](const httplib::Request&, httplib::Response& res) {
          res.set_content(export_audit_log(pool_->audit_log()), "application/x-ndjson");
        }));
  s.Get("/ledger/status", http::guarded([this](const httplib::Request&, httplib::Response& res) {
          Json nodes = Json::array();
          for (std::size_t i = 0; i < pool_->size(); ++i) {
            nodes.push_back({{"alias", pool_->node(i).info().alias},
                             {"running", pool_->running(i)},
                             {"height", pool_->node(i).height()}});
          }
          http::send_json(res, {{"nodes", nodes}, {"f", pool_->max_faulty()}, {"quorum", pool_->quorum()}});
        }));
}

LedgerHttpServer::~LedgerHttpServer() { stop(); }

int LedgerHttpServer::start(const std::string& host, int port) {
  host_ = host;
  http::exclusive_port(*server_);
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ <= 0) throw Error(ErrorCode::IoError, "cannot bind ledger server to " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void LedgerHttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string LedgerHttpServer::url() const { return "http://" + host_ + ":" + std::to_string(port_); }

Receipt HttpLedger::submit(const Transaction& request) {
  return receipt_from_json(http::post_json(base_, "/ledger/submit", to_json(request)));
}

NymRecord HttpLedger::get_nym(const std::string& did) {
  return nym_from_json(http::get_json(base_, "/ledger/nym?did=" + http::url_encode(did)));
}

SchemaRecord HttpLedger::get_schema(const std::string& id) {
  return schema_from_json(http::get_json(base_, "/ledger/schema?id=" + http::url_encode(id)));
}

CredDefRecord HttpLedger::get_cred_def(const std::string& id) {
  return cred_def_from_json(http::get_json(base_, "/ledger/cred-def?id=" + http::url_encode(id)));
}

RevRegDefRecord HttpLedger::get_rev_reg_def(const std::string& id) {
  return rev_reg_def_from_json(http::get_json(base_, "/ledger/rev-reg-def?id=" + http::url_encode(id)));
}

RevRegState HttpLedger::get_rev_reg(const std::string& id, std::optional<std::int64_t> at_time) {
  std::string path = "/ledger/rev-reg?id=" + http::url_encode(id);
  if (at_time) path += "&atTime=" + std::to_string(*at_time);
  return rev_reg_state_from_json(http::get_json(base_, path));
}

Json HttpLedger::get_config(const std::string& key) {
  return http::get_json(base_, "/ledger/config?key=" + http::url_encode(key)).at("value");
}

std::vector<Transaction> HttpLedger::audit_log() {
  return parse_audit_log(http::get_text(base_, "/ledger/audit-log"));
}

}  // namespace ssi::ledger
