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

#include "maya/generation/http_providers.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "maya/errors.hpp"

namespace maya {

using nlohmann::json;

namespace {

template <typename ErrorT>
json post_json(const HttpEndpoint& ep, const std::string& route, const json& body) {
  httplib::Client client(ep.host, ep.port);
  client.set_connection_timeout(30, 0);
  client.set_read_timeout(60, 0);
  auto res = client.Post(ep.base_path + route, body.dump(), "application/json");
  if (!res) {
    throw ErrorT(route + ": provider unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ErrorT(route + ": provider answered HTTP " + std::to_string(res->status));
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ErrorT(route + ": malformed provider response: " + e.what());
  }
}

template <typename ErrorT, typename F>
auto decode(const std::string& route, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ErrorT(route + ": malformed provider response: " + e.what());
  }
}

}  // namespace

HttpParser::HttpParser(std::string url) : endpoint_(HttpEndpoint::parse(url)) {}

std::vector<ConstituentSpan> HttpParser::parse(std::span<const std::string> tokens) const {
  json req{{"tokens", std::vector<std::string>(tokens.begin(), tokens.end())}};
  auto res = post_json<ParseError>(endpoint_, "/parse", req);
  return decode<ParseError>("/parse", [&] {
    std::vector<ConstituentSpan> out;
    for (const auto& s : res.at("spans")) {
      out.push_back({s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>(),
                     s.at("tag").get<std::string>()});
    }
    return out;
  });
}

HttpParaphraser::HttpParaphraser(std::string url, std::string name)
    : endpoint_(HttpEndpoint::parse(url)), name_(std::move(name)) {}

std::vector<std::string> HttpParaphraser::rewrite(std::span<const std::string> sentence_tokens,
                                                  const ConstituentSpan& span) const {
  json req{{"tokens", std::vector<std::string>(sentence_tokens.begin(), sentence_tokens.end())},
           {"span", {{"start", span.start_token}, {"end", span.end_token}, {"tag", span.tag}}},
           {"paraphraser", name_}};
  auto res = post_json<ParaphraseError>(endpoint_, "/paraphrase", req);
  return decode<ParaphraseError>(
      "/paraphrase", [&] { return res.at("rewrites").get<std::vector<std::string>>(); });
}

HttpMaskedLm::HttpMaskedLm(std::string url) : endpoint_(HttpEndpoint::parse(url)) {}

std::vector<Substitute> HttpMaskedLm::fill(std::span<const std::string> tokens,
                                           std::size_t position, std::size_t top_n) const {
  json req{{"tokens", std::vector<std::string>(tokens.begin(), tokens.end())},
           {"position", position},
           {"top_n", top_n}};
  auto res = post_json<SubstituteError>(endpoint_, "/fill_mask", req);
  return decode<SubstituteError>("/fill_mask", [&] {
    std::vector<Substitute> out;
    for (const auto& s : res.at("substitutes")) {
      out.push_back({s.at("word").get<std::string>(), s.at("probability").get<double>()});
    }
    return out;
  });
}

HttpEncoder::HttpEncoder(std::string url) : endpoint_(HttpEndpoint::parse(url)) {}

Embedding HttpEncoder::encode(std::string_view text) const {
  json req{{"texts", {std::string(text)}}};
  auto res = post_json<ProviderError>(endpoint_, "/embed", req);
  return decode<ProviderError>("/embed", [&] {
    auto rows = res.at("embeddings").get<std::vector<Embedding>>();
    if (rows.size() != 1) throw ProviderError("/embed: expected one embedding");
    return rows.front();
  });
}

HttpGrammarChecker::HttpGrammarChecker(std::string url) : endpoint_(HttpEndpoint::parse(url)) {}

int HttpGrammarChecker::count_errors(std::string_view text) const {
  json req{{"texts", {std::string(text)}}};
  auto res = post_json<ProviderError>(endpoint_, "/grammar", req);
  return decode<ProviderError>("/grammar", [&] {
    auto counts = res.at("errors").get<std::vector<int>>();
    if (counts.size() != 1 || counts.front() < 0) {
      throw ProviderError("/grammar: expected one non-negative count");
    }
    return counts.front();
  });
}

}  // namespace maya
