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

#include "maya/victims/http_victim.hpp"

#include <cmath>
#include <mutex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "maya/errors.hpp"

namespace maya {

using nlohmann::json;

std::string encode_predict_request(std::span<const std::string> texts,
                                   const std::optional<std::string>& context) {
  json j;
  j["texts"] = std::vector<std::string>(texts.begin(), texts.end());
  j["context"] = context ? json(*context) : json(nullptr);
  return j.dump();
}

std::vector<VictimVerdict> decode_predict_response(const std::string& body,
                                                   std::size_t expected_count,
                                                   VictimMode mode, int label_count) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolViolation(std::string("predict response is not JSON: ") + e.what());
  }
  try {
    const auto labels = j.at("labels").get<std::vector<int>>();
    const int served_label_count = j.at("label_count").get<int>();
    if (labels.size() != expected_count) {
      throw ProtocolViolation("predict response has " + std::to_string(labels.size()) +
                              " labels for " + std::to_string(expected_count) + " texts");
    }
    if (served_label_count != label_count) {
      throw ProtocolViolation("server label_count " + std::to_string(served_label_count) +
                              " differs from expected " + std::to_string(label_count));
    }
    for (int l : labels) {
      if (l < 0 || l >= label_count) throw ProtocolViolation("label out of range");
    }
    const auto& scores = j.at("scores");
    std::vector<VictimVerdict> out;
    out.reserve(labels.size());
    if (scores.is_null()) {
      if (mode == VictimMode::kScoreBased) {
        throw ProtocolViolation("score-based victim returned no scores");
      }
      for (int l : labels) out.push_back(VictimVerdict::label_only(l));
      return out;
    }
    const auto rows = scores.get<std::vector<std::vector<double>>>();
    if (rows.size() != labels.size()) throw ProtocolViolation("scores/labels length mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != static_cast<std::size_t>(label_count)) {
        throw ProtocolViolation("score vector has the wrong width");
      }
      VictimVerdict v = [&] {
        try {
          return VictimVerdict::from_scores(rows[i]);
        } catch (const InvalidArgument& e) {
          throw ProtocolViolation(e.what());
        }
      }();
      if (v.label() != labels[i]) throw ProtocolViolation("label is not the argmax of scores");
      out.push_back(mode == VictimMode::kScoreBased ? v : VictimVerdict::label_only(v.label()));
    }
    return out;
  } catch (const json::exception& e) {
    throw ProtocolViolation(std::string("malformed predict response: ") + e.what());
  }
}

std::string handle_predict_request(Victim& victim, const std::string& body, VictimMode mode) {
  std::vector<std::string> texts;
  std::optional<std::string> context;
  try {
    auto j = json::parse(body);
    texts = j.at("texts").get<std::vector<std::string>>();
    const auto& ctx = j.at("context");
    if (!ctx.is_null()) context = ctx.get<std::string>();
  } catch (const json::exception& e) {
    throw ProtocolViolation(std::string("malformed predict request: ") + e.what());
  }
  const auto cap = victim.capability();
  const auto verdicts = victim.predict(texts, context);
  json out;
  std::vector<int> labels;
  for (const auto& v : verdicts) labels.push_back(v.label());
  out["labels"] = labels;
  out["label_count"] = cap.label_count;
  if (mode == VictimMode::kScoreBased) {
    json rows = json::array();
    for (const auto& v : verdicts) rows.push_back(v.scores());
    out["scores"] = rows;
  } else {
    out["scores"] = nullptr;
  }
  return out.dump();
}

HttpEndpoint HttpEndpoint::parse(std::string_view url) {
  std::string s(url);
  if (s.rfind("http://", 0) == 0) s = s.substr(7);
  if (s.rfind("https://", 0) == 0) throw InvalidArgument("https victims are not supported");
  HttpEndpoint ep;
  auto slash = s.find('/');
  std::string hostport = s.substr(0, slash);
  if (slash != std::string::npos) ep.base_path = s.substr(slash);
  while (!ep.base_path.empty() && ep.base_path.back() == '/') ep.base_path.pop_back();
  auto colon = hostport.rfind(':');
  if (colon == std::string::npos) {
    ep.host = hostport;
  } else {
    ep.host = hostport.substr(0, colon);
    try {
      ep.port = std::stoi(hostport.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad port in URL: " + std::string(url));
    }
  }
  if (ep.host.empty()) throw InvalidArgument("missing host in URL: " + std::string(url));
  return ep;
}

HttpVictim::HttpVictim(std::string url, VictimMode mode, int label_count, double timeout_seconds)
    : endpoint_(HttpEndpoint::parse(url)),
      mode_(mode),
      label_count_(label_count),
      timeout_seconds_(timeout_seconds) {
  if (label_count_ <= 0) throw InvalidArgument("HttpVictim: label_count must be positive");
}

VictimCapability HttpVictim::capability() const {
  return VictimCapability::make(mode_, label_count_);
}

std::vector<VictimVerdict> HttpVictim::do_predict(std::span<const std::string> texts,
                                                  const std::optional<std::string>& context) {
  httplib::Client client(endpoint_.host, endpoint_.port);
  const auto secs = static_cast<time_t>(timeout_seconds_);
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  auto res = client.Post(endpoint_.base_path + "/predict", encode_predict_request(texts, context),
                         "application/json");
  if (!res) {
    throw VictimUnavailable("victim at " + endpoint_.host + ":" + std::to_string(endpoint_.port) +
                            " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw VictimUnavailable("victim answered HTTP " + std::to_string(res->status));
  }
  return decode_predict_response(res->body, texts.size(), mode_, label_count_);
}

VictimServer::VictimServer(VictimPtr victim, VictimMode mode)
    : victim_(std::move(victim)), mode_(mode), server_(std::make_unique<httplib::Server>()) {
  server_->Post("/predict", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      std::unique_lock lock(mu_, std::defer_lock);
      if (!victim_->thread_safe()) lock.lock();
      res.set_content(handle_predict_request(*victim_, req.body, mode_), "application/json");
    } catch (const ProtocolViolation& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    } catch (const InvalidArgument& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  });
}

VictimServer::~VictimServer() { stop(); }

int VictimServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  if (!server_->bind_to_port(host, port)) {
    throw VictimUnavailable("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void VictimServer::serve() { server_->listen_after_bind(); }

void VictimServer::stop() {
  if (server_) server_->stop();
}

}  // namespace maya
