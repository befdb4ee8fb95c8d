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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maya/core/similarity.hpp"
#include "maya/core/types.hpp"

namespace maya {

struct ProviderTraits {
  bool deterministic = true;
  bool thread_safe = true;
};

// Returns every node of the constituency tree as a span over whitespace
// tokens, pre-terminals included.
class ConstituencyParser {
 public:
  virtual ~ConstituencyParser() = default;
  virtual std::string name() const = 0;
  virtual ProviderTraits traits() const { return {}; }
  virtual std::vector<ConstituentSpan> parse(std::span<const std::string> tokens) const = 0;
};

// Rewrites the tokens of one span; returns replacement strings for the span
// only (the caller splices them back into the sentence).
class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  virtual std::string name() const = 0;
  virtual ProviderTraits traits() const { return {}; }
  virtual std::vector<std::string> rewrite(std::span<const std::string> sentence_tokens,
                                           const ConstituentSpan& span) const = 0;
};

struct Substitute {
  std::string word;
  double probability = 0.0;

  friend bool operator==(const Substitute&, const Substitute&) = default;
};

// Proposes fillers for tokens[position] (which holds the mask token), ordered
// by non-increasing probability with a deterministic tie order.
class MaskedLanguageModel {
 public:
  virtual ~MaskedLanguageModel() = default;
  virtual std::string name() const = 0;
  virtual ProviderTraits traits() const { return {}; }
  virtual std::vector<Substitute> fill(std::span<const std::string> tokens, std::size_t position,
                                       std::size_t top_n) const = 0;
};

class SentenceEncoder {
 public:
  virtual ~SentenceEncoder() = default;
  virtual std::string name() const = 0;
  virtual ProviderTraits traits() const { return {}; }
  virtual Embedding encode(std::string_view text) const = 0;
};

class GrammarChecker {
 public:
  virtual ~GrammarChecker() = default;
  virtual std::string name() const = 0;
  virtual ProviderTraits traits() const { return {}; }
  virtual int count_errors(std::string_view text) const = 0;
};

class LexicalRelations {
 public:
  virtual ~LexicalRelations() = default;
  virtual std::string name() const = 0;
  virtual ProviderTraits traits() const { return {}; }
  virtual std::vector<std::string> antonyms(std::string_view word) const = 0;
};

class PerplexityModel {
 public:
  virtual ~PerplexityModel() = default;
  virtual std::string name() const = 0;
  virtual ProviderTraits traits() const { return {}; }
  virtual double perplexity(std::string_view text) const = 0;
};

struct ProviderSuite {
  std::shared_ptr<const ConstituencyParser> parser;
  std::vector<std::shared_ptr<const Paraphraser>> paraphrasers;
  std::shared_ptr<const MaskedLanguageModel> masked_lm;
  std::shared_ptr<const SentenceEncoder> encoder;
  std::shared_ptr<const GrammarChecker> grammar;
  std::shared_ptr<const LexicalRelations> antonyms;     // optional
  std::shared_ptr<const PerplexityModel> perplexity;    // optional

  // Checks that the providers required by both generation paths are present.
  void validate() const;
  bool can_paraphrase() const { return parser && !paraphrasers.empty(); }

  // Copy in which every provider that is not thread-safe sits behind a mutex.
  ProviderSuite serialized() const;
};

}  // namespace maya
