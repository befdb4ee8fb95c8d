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

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "maya/core/types.hpp"
#include "maya/generation/providers.hpp"
#include "maya/victims/victim.hpp"

namespace maya::testing {

inline constexpr const char* kTrigger = "zork";

// Label 1 when any trigger token is present, else 0. Confidence varies with a
// hash of the text so candidates get distinct scores.
class TriggerVictim : public Victim {
 public:
  explicit TriggerVictim(std::set<std::string> triggers = {kTrigger},
                         VictimMode mode = VictimMode::kScoreBased);
  VictimCapability capability() const override;
  std::size_t calls() const { return calls_.load(); }
  std::size_t texts_seen() const { return texts_.load(); }
  double positive_score(const std::string& text) const;

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  std::set<std::string> triggers_;
  VictimMode mode_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> texts_{0};
};

// Returns sealed verdicts: reading scores raises ScoresAccessViolation.
class ScoresTrap : public Victim {
 public:
  explicit ScoresTrap(VictimPtr inner) : inner_(std::move(inner)) {}
  VictimCapability capability() const override;

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  VictimPtr inner_;
};

// Per-text probability vectors with a fallback; records every queried text.
class ScriptedVictim : public Victim {
 public:
  ScriptedVictim(std::map<std::string, std::vector<double>> table, std::vector<double> fallback);
  VictimCapability capability() const override;
  const std::vector<std::string>& queried() const { return queried_; }
  void set(const std::string& text, std::vector<double> scores) { table_[text] = std::move(scores); }
  bool thread_safe() const override { return false; }

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  std::map<std::string, std::vector<double>> table_;
  std::vector<double> fallback_;
  std::vector<std::string> queried_;
};

// Predicts the same label for everything.
class ConstantVictim : public Victim {
 public:
  explicit ConstantVictim(LabelIndex label, int label_count = 2)
      : label_(label), label_count_(label_count) {}
  VictimCapability capability() const override;

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  LabelIndex label_;
  int label_count_;
};

class FunctionParser : public ConstituencyParser {
 public:
  using Fn = std::function<std::vector<ConstituentSpan>(std::span<const std::string>)>;
  explicit FunctionParser(Fn fn) : fn_(std::move(fn)) {}
  std::string name() const override { return "function-parser"; }
  std::vector<ConstituentSpan> parse(std::span<const std::string> tokens) const override {
    return fn_(tokens);
  }

 private:
  Fn fn_;
};

class FunctionParaphraser : public Paraphraser {
 public:
  using Fn = std::function<std::vector<std::string>(std::span<const std::string>,
                                                    const ConstituentSpan&)>;
  FunctionParaphraser(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  std::string name() const override { return name_; }
  std::vector<std::string> rewrite(std::span<const std::string> tokens,
                                   const ConstituentSpan& span) const override {
    return fn_(tokens, span);
  }

 private:
  std::string name_;
  Fn fn_;
};

// Fixed vectors per text, hashed bag vectors otherwise.
class TableEncoder : public SentenceEncoder {
 public:
  explicit TableEncoder(std::map<std::string, Embedding> table = {});
  std::string name() const override { return "table-encoder"; }
  Embedding encode(std::string_view text) const override;
  void set(const std::string& text, Embedding e) { table_[text] = std::move(e); }

 private:
  std::map<std::string, Embedding> table_;
  std::shared_ptr<const SentenceEncoder> fallback_;
};

// Fixed counts per text, `fallback` otherwise.
class TableGrammar : public GrammarChecker {
 public:
  explicit TableGrammar(std::map<std::string, int> table = {}, int fallback = 0)
      : table_(std::move(table)), fallback_(fallback) {}
  std::string name() const override { return "table-grammar"; }
  int count_errors(std::string_view text) const override;

 private:
  std::map<std::string, int> table_;
  int fallback_;
};

class ConstantPerplexity : public PerplexityModel {
 public:
  explicit ConstantPerplexity(double value) : value_(value) {}
  std::string name() const override { return "constant-ppl"; }
  double perplexity(std::string_view) const override { return value_; }

 private:
  double value_;
};

// Filler vocabulary for synthetic sentences.
const std::vector<std::string>& filler_words();

// Smallest bucket count >= min_buckets at which the trigger shares a hash
// bucket with no filler word.
std::size_t collision_free_buckets(std::size_t min_buckets);

// n samples of 5-9 filler words with the trigger at a random position;
// gold label 1.
std::vector<TextSample> trigger_dataset(std::size_t n, std::uint64_t seed);

// Balanced two-class data: label 1 samples contain the trigger, label 0
// samples do not.
std::vector<TextSample> balanced_trigger_dataset(std::size_t n, std::uint64_t seed);

std::vector<std::string> texts_of(std::span<const TextSample> samples);

// Reference providers fit on the given samples.
ProviderSuite reference_suite(std::span<const TextSample> corpus);

// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace maya::testing
