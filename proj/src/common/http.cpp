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
#include "ssi/common/http.hpp"

namespace ssi::http {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::Unauthorized:
    case ErrorCode::NotVerified:
    case ErrorCode::NoRole:
      return 403;
    case ErrorCode::InvalidToken:
    case ErrorCode::Expired:
      return 401;
    case ErrorCode::ReplayRejected:
    case ErrorCode::AlreadyRevoked:
    case ErrorCode::DuplicateRequest:
    case ErrorCode::InvalidState:
      return 409;
    case ErrorCode::NoConsensus:
    case ErrorCode::TransportError:
    case ErrorCode::TargetDown:
      return 503;
    case ErrorCode::Timeout:
      return 504;
    default:
      return 400;
  }
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, {{"error", to_string(e.code())}, {"message", e.what()}}, status_for(e.code()));
}

void send_json(httplib::Response& res, const Json& body, int status) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("request body: ") + e.what());
  }
}

namespace {

httplib::Client make_client(const std::string& base_url, std::chrono::milliseconds timeout) {
  httplib::Client cli(base_url);
  cli.set_connection_timeout(std::chrono::seconds(2));
  cli.set_read_timeout(timeout);
  cli.set_write_timeout(timeout);
  return cli;
}

Json decode(const httplib::Result& res, const std::string& where) {
  if (!res) throw Error(ErrorCode::TransportError, where + ": " + httplib::to_string(res.error()));
  Json body;
  try {
    body = res->body.empty() ? Json::object() : Json::parse(res->body);
  } catch (const Json::exception&) {
    throw Error(ErrorCode::TransportError, where + ": non-JSON response (status " + std::to_string(res->status) + ")");
  }
  if (res->status >= 400) {
    const auto code = body.is_object() && body.contains("error")
                          ? error_code_from_string(body["error"].get<std::string>())
                          : ErrorCode::TransportError;
    std::string message = body.is_object() ? body.value("message", std::string{}) : std::string{};
    // Remote messages already carry the "Code: " prefix.
    const std::string prefix = std::string(to_string(code)) + ": ";
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    throw Error(code, message);
  }
  return body;
}

}  // namespace

Json post_json(const std::string& base_url, const std::string& path, const Json& body,
               std::chrono::milliseconds timeout) {
  auto cli = make_client(base_url, timeout);
  return decode(cli.Post(path, body.dump(), "application/json"), "POST " + base_url + path);
}

Json get_json(const std::string& base_url, const std::string& path, std::chrono::milliseconds timeout) {
  auto cli = make_client(base_url, timeout);
  return decode(cli.Get(path), "GET " + base_url + path);
}

std::string get_text(const std::string& base_url, const std::string& path, std::chrono::milliseconds timeout) {
  auto cli = make_client(base_url, timeout);
  auto res = cli.Get(path);
  if (!res) throw Error(ErrorCode::TransportError, "GET " + base_url + path + ": " + httplib::to_string(res.error()));
  if (res->status >= 400) decode(res, "GET " + base_url + path);
  return res->body;
}

std::string url_encode(const std::string& s) { return httplib::detail::encode_query_param(s); }

std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme = url.find("://");
  const auto path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

void exclusive_port(httplib::Server& server) {
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
}

}  // namespace ssi::http
