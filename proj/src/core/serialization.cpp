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

#include "maya/core/serialization.hpp"

namespace maya {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

void to_json(json& j, const ConstituentSpan& span) {
  j = json{{"start", span.start_token}, {"end", span.end_token}, {"tag", span.tag}};
}

void from_json(const json& j, ConstituentSpan& span) {
  span.start_token = j.at("start").get<std::size_t>();
  span.end_token = j.at("end").get<std::size_t>();
  span.tag = j.at("tag").get<std::string>();
}

void to_json(json& j, const Candidate& c) {
  j = json{{"text", c.text}, {"origin", std::string(to_string(c.origin))}};
  if (c.span) j["span"] = *c.span;
  if (c.mask_position) j["mask_position"] = *c.mask_position;
  if (c.similarity) j["similarity"] = *c.similarity;
  if (c.grammar_errors) j["grammar_errors"] = *c.grammar_errors;
  if (!c.paraphraser.empty()) j["paraphraser"] = c.paraphraser;
}

void from_json(const json& j, Candidate& c) {
  c.text = j.at("text").get<std::string>();
  c.origin = parse_candidate_origin(j.at("origin").get<std::string>());
  c.span = optional_field<ConstituentSpan>(j, "span");
  c.mask_position = optional_field<std::size_t>(j, "mask_position");
  c.similarity = optional_field<double>(j, "similarity");
  c.grammar_errors = optional_field<int>(j, "grammar_errors");
  c.paraphraser = j.value("paraphraser", std::string());
  c.validate();
}

void to_json(json& j, const RoundRecord& r) {
  j = json{{"round", r.round},
           {"chosen_text", r.chosen_text},
           {"origin", std::string(to_string(r.origin))},
           {"score_drop", optional_json(r.score_drop)},
           {"queries_so_far", r.queries_so_far}};
}

void from_json(const json& j, RoundRecord& r) {
  r.round = j.at("round").get<int>();
  r.chosen_text = j.at("chosen_text").get<std::string>();
  r.origin = parse_candidate_origin(j.at("origin").get<std::string>());
  r.score_drop = optional_field<double>(j, "score_drop");
  r.queries_so_far = j.at("queries_so_far").get<std::size_t>();
}

void to_json(json& j, const AttackOutcome& o) {
  j = json{{"sample_id", o.sample_id},
           {"status", std::string(to_string(o.status))},
           {"adversarial_text", optional_json(o.adversarial_text)},
           {"rounds", o.rounds},
           {"queries", o.queries},
           {"label_before", o.label_before},
           {"label_after", optional_json(o.label_after)},
           {"trace", o.trace}};
}

void from_json(const json& j, AttackOutcome& o) {
  o.sample_id = j.at("sample_id").get<std::string>();
  o.status = parse_attack_status(j.at("status").get<std::string>());
  o.adversarial_text = optional_field<std::string>(j, "adversarial_text");
  o.rounds = j.at("rounds").get<int>();
  o.queries = j.at("queries").get<std::size_t>();
  o.label_before = j.at("label_before").get<LabelIndex>();
  o.label_after = optional_field<LabelIndex>(j, "label_after");
  o.trace = j.at("trace").get<std::vector<RoundRecord>>();
}

}  // namespace maya
