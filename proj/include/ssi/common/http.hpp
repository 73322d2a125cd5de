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

#include <chrono>
#include <string>

#include <httplib.h>

#include "ssi/common/error.hpp"
#include "ssi/common/json_util.hpp"

namespace ssi::http {

int status_for(ErrorCode code);

/// {"error": "<ErrorCode>", "message": "..."} with a matching status.
void send_error(httplib::Response& res, const Error& e);
void send_json(httplib::Response& res, const Json& body, int status = 200);

Json parse_body(const httplib::Request& req);

/// Stock httplib listeners set SO_REUSEPORT, which lets a second process
/// bind the same port silently. This keeps SO_REUSEADDR only, so a busy port
/// fails to bind.
void exclusive_port(httplib::Server& server);

/// Wraps a route handler: ssi::Error and JSON errors become error bodies.
template <typename F>
auto guarded(F&& handler) {
  return [h = std::forward<F>(handler)](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const Json::exception& e) {
      send_error(res, Error(ErrorCode::Malformed, e.what()));
    } catch (const std::exception& e) {
      send_error(res, Error(ErrorCode::InvalidState, e.what()));
    }
  };
}

/// Blocking JSON request against \p base_url ("http://host:port").
/// Transport failures raise TransportError; error bodies are rethrown as the
/// ssi::Error they encode.
Json post_json(const std::string& base_url, const std::string& path, const Json& body,
               std::chrono::milliseconds timeout = std::chrono::seconds(30));
Json get_json(const std::string& base_url, const std::string& path,
              std::chrono::milliseconds timeout = std::chrono::seconds(30));
std::string get_text(const std::string& base_url, const std::string& path,
                     std::chrono::milliseconds timeout = std::chrono::seconds(30));

std::string url_encode(const std::string& s);

/// Splits "http://host:port/..." into scheme+authority and path.
std::pair<std::string, std::string> split_url(const std::string& url);

}  // namespace ssi::http
