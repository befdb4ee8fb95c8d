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

#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <random>

#include "maya/core/text.hpp"
#include "maya/errors.hpp"
#include "maya/generation/reference_providers.hpp"

namespace maya::testing {

TriggerVictim::TriggerVictim(std::set<std::string> triggers, VictimMode mode)
    : triggers_(std::move(triggers)), mode_(mode) {}

VictimCapability TriggerVictim::capability() const { return VictimCapability::make(mode_, 2); }

double TriggerVictim::positive_score(const std::string& text) const {
  bool present = false;
  for (const auto& t : tokenize(text)) present = present || triggers_.contains(to_lower(t));
  const double u = static_cast<double>(stable_hash(text) % 1000) / 1000.0;
  return present ? 0.6 + 0.35 * u : 0.05 + 0.35 * u;
}

std::vector<VictimVerdict> TriggerVictim::do_predict(std::span<const std::string> texts,
                                                     const std::optional<std::string>&) {
  ++calls_;
  texts_ += texts.size();
  std::vector<VictimVerdict> out;
  for (const auto& t : texts) {
    const double p = positive_score(t);
    auto v = VictimVerdict::from_scores({1.0 - p, p});
    out.push_back(mode_ == VictimMode::kScoreBased ? v : VictimVerdict::label_only(v.label()));
  }
  return out;
}

VictimCapability ScoresTrap::capability() const {
  auto c = inner_->capability();
  c.mode = VictimMode::kDecisionBased;
  return c;
}

std::vector<VictimVerdict> ScoresTrap::do_predict(std::span<const std::string> texts,
                                                  const std::optional<std::string>& context) {
  auto verdicts = inner_->predict(texts, context);
  for (auto& v : verdicts) v = VictimVerdict::sealed(v);
  return verdicts;
}

ScriptedVictim::ScriptedVictim(std::map<std::string, std::vector<double>> table,
                               std::vector<double> fallback)
    : table_(std::move(table)), fallback_(std::move(fallback)) {}

VictimCapability ScriptedVictim::capability() const {
  return VictimCapability::make(VictimMode::kScoreBased, static_cast<int>(fallback_.size()));
}

std::vector<VictimVerdict> ScriptedVictim::do_predict(std::span<const std::string> texts,
                                                      const std::optional<std::string>&) {
  std::vector<VictimVerdict> out;
  for (const auto& t : texts) {
    queried_.push_back(t);
    const auto it = table_.find(t);
    out.push_back(VictimVerdict::from_scores(it == table_.end() ? fallback_ : it->second));
  }
  return out;
}

VictimCapability ConstantVictim::capability() const {
  return VictimCapability::make(VictimMode::kDecisionBased, label_count_);
}

std::vector<VictimVerdict> ConstantVictim::do_predict(std::span<const std::string> texts,
                                                      const std::optional<std::string>&) {
  return std::vector<VictimVerdict>(texts.size(), VictimVerdict::label_only(label_));
}

TableEncoder::TableEncoder(std::map<std::string, Embedding> table)
    : table_(std::move(table)), fallback_(std::make_shared<HashedBagEncoder>()) {}

Embedding TableEncoder::encode(std::string_view text) const {
  const auto it = table_.find(std::string(text));
  return it == table_.end() ? fallback_->encode(text) : it->second;
}

int TableGrammar::count_errors(std::string_view text) const {
  const auto it = table_.find(std::string(text));
  return it == table_.end() ? fallback_ : it->second;
}

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {
      "the",   "movie", "was",   "quite", "long",  "and",   "the",  "actors", "seemed",
      "tired", "plot",  "moved", "slowly", "city", "looked", "grey", "music",  "played",
      "a",     "story", "about", "two",   "old",   "friends", "on",  "road",   "trip"};
  return words;
}

std::size_t collision_free_buckets(std::size_t min_buckets) {
  const auto trigger = stable_hash(std::string(kTrigger));
  for (std::size_t b = std::max<std::size_t>(min_buckets, 1);; ++b) {
    bool clash = false;
    for (const auto& w : filler_words()) clash = clash || stable_hash(w) % b == trigger % b;
    if (!clash) return b;
  }
}

namespace {

std::string random_sentence(std::mt19937_64& rng, bool with_trigger) {
  const auto& words = filler_words();
  std::uniform_int_distribution<std::size_t> len(5, 9);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::vector<std::string> toks;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) toks.push_back(words[pick(rng)]);
  if (with_trigger) {
    std::uniform_int_distribution<std::size_t> at(0, toks.size());
    toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(at(rng)), kTrigger);
  }
  return detokenize(toks);
}

}  // namespace

std::vector<TextSample> trigger_dataset(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TextSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(TextSample::make("t" + std::to_string(i), random_sentence(rng, true), 1, 2));
  }
  return out;
}

std::vector<TextSample> balanced_trigger_dataset(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TextSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = i % 2 == 0;
    out.push_back(TextSample::make("b" + std::to_string(i), random_sentence(rng, positive),
                                   positive ? 1 : 0, 2));
  }
  return out;
}

std::vector<std::string> texts_of(std::span<const TextSample> samples) {
  std::vector<std::string> out;
  for (const auto& s : samples) out.push_back(s.text);
  return out;
}

ProviderSuite reference_suite(std::span<const TextSample> corpus) {
  const auto texts = texts_of(corpus);
  return make_reference_suite(texts);
}

TempDir::TempDir() {
  std::random_device rd;
  const auto base = std::filesystem::temp_directory_path();
  for (;;) {
    path_ = base / ("maya-test-" + std::to_string(rd()));
    if (std::filesystem::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace maya::testing
