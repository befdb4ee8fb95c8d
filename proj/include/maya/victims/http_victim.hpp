// Copyright 2026 The Maya Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maya/victims/victim.hpp"

namespace httplib {
class Server;
}

namespace maya {

// Wire format of POST /predict:
//   request  {"texts": [string...], "context": string|null}
//   response {"labels": [int...], "scores": [[float...]...]|null, "label_count": int}
// Decision-based servers answer with "scores": null.
std::string encode_predict_request(std::span<const std::string> texts,
                                   const std::optional<std::string>& context);

// Decodes and validates a response body. Throws ProtocolViolation on any
// mismatch with the request or the verdict invariants.
std::vector<VictimVerdict> decode_predict_response(const std::string& body,
                                                   std::size_t expected_count,
                                                   VictimMode mode, int label_count);

// Server side of the protocol: runs `victim` on a request body and renders the
// response. Scores are omitted when `mode` is decision-based.
std::string handle_predict_request(Victim& victim, const std::string& body, VictimMode mode);

struct HttpEndpoint {
  std::string host;
  int port = 80;
  std::string base_path;

  // Accepts "http://host:port[/path]" or "host:port".
  static HttpEndpoint parse(std::string_view url);
};

class HttpVictim : public Victim {
 public:
  HttpVictim(std::string url, VictimMode mode, int label_count, double timeout_seconds = 30.0);

  VictimCapability capability() const override;

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  HttpEndpoint endpoint_;
  VictimMode mode_;
  int label_count_;
  double timeout_seconds_;
};

// Serves a victim over the predict protocol.
class VictimServer {
 public:
  VictimServer(VictimPtr victim, VictimMode mode);
  ~VictimServer();
  VictimServer(const VictimServer&) = delete;
  VictimServer& operator=(const VictimServer&) = delete;

  // Binds and returns the bound port (port 0 picks a free one).
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void serve();
  void stop();

 private:
  VictimPtr victim_;
  VictimMode mode_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex mu_;
};

}  // namespace maya
