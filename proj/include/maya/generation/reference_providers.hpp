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

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "maya/generation/providers.hpp"

namespace maya {

// Part-of-speech lookup used by LexiconParser. Unknown words fall back to
// suffix heuristics and finally NOUN.
std::string lexicon_tag(std::string_view word);

// Shallow rule-based constituency parser: tags tokens from a small lexicon,
// chunks them into NP/VP/PP/ADJP phrases and hangs everything under one S.
class LexiconParser : public ConstituencyParser {
 public:
  std::string name() const override { return "lexicon"; }
  std::vector<ConstituentSpan> parse(std::span<const std::string> tokens) const override;
};

// Replaces one word of the span at a time with each of its dictionary
// synonyms. Every rewrite differs from the span in exactly one token.
class SynonymParaphraser : public Paraphraser {
 public:
  SynonymParaphraser();  // built-in dictionary
  SynonymParaphraser(std::string name, std::map<std::string, std::vector<std::string>> synonyms,
                     std::size_t max_rewrites = 16);

  std::string name() const override { return name_; }
  std::vector<std::string> rewrite(std::span<const std::string> sentence_tokens,
                                   const ConstituentSpan& span) const override;

 private:
  std::string name_;
  std::map<std::string, std::vector<std::string>> synonyms_;
  std::size_t max_rewrites_;
};

// Looks the lower-cased span text up in a fixed phrase table.
class ScriptedParaphraser : public Paraphraser {
 public:
  ScriptedParaphraser(std::string name, std::map<std::string, std::vector<std::string>> table);

  std::string name() const override { return name_; }
  std::vector<std::string> rewrite(std::span<const std::string> sentence_tokens,
                                   const ConstituentSpan& span) const override;

 private:
  std::string name_;
  std::map<std::string, std::vector<std::string>> table_;
};

// Masked LM backed by unigram and neighbour-bigram counts from a corpus.
// Ties in probability are broken by the word's lexicographic order.
class FrequencyMaskedLm : public MaskedLanguageModel {
 public:
  explicit FrequencyMaskedLm(std::span<const std::string> corpus, double bigram_weight = 4.0);
  // Context-free model with fixed (unnormalized) weights.
  static std::shared_ptr<FrequencyMaskedLm> from_table(std::map<std::string, double> weights);

  std::string name() const override { return "frequency"; }
  std::vector<Substitute> fill(std::span<const std::string> tokens, std::size_t position,
                               std::size_t top_n) const override;

 private:
  FrequencyMaskedLm() = default;

  std::map<std::string, double> unigram_;
  std::map<std::pair<std::string, std::string>, double> bigram_;
  double bigram_weight_ = 0.0;
};

// Mean of pseudo-random per-token vectors derived from a hash of the
// lower-cased token and a seed.
class HashedBagEncoder : public SentenceEncoder {
 public:
  explicit HashedBagEncoder(std::size_t dim = 64, std::uint64_t seed = 17);

  std::string name() const override;
  Embedding encode(std::string_view text) const override;
  Embedding token_vector(std::string_view token) const;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Counts three error kinds: a doubled word, a/an agreement, and two
// determiners in a row.
class RuleGrammarChecker : public GrammarChecker {
 public:
  std::string name() const override { return "rules"; }
  int count_errors(std::string_view text) const override;
};

// Symmetric antonym dictionary.
class DictionaryLexicon : public LexicalRelations {
 public:
  DictionaryLexicon();  // built-in pairs
  explicit DictionaryLexicon(const std::vector<std::pair<std::string, std::string>>& pairs);

  std::string name() const override { return "dictionary"; }
  std::vector<std::string> antonyms(std::string_view word) const override;

 private:
  std::map<std::string, std::vector<std::string>> antonyms_;
};

// Desk-scale suite: lexicon parser, synonym paraphraser, corpus MLM, hashed
// encoder, rule grammar checker and built-in antonyms.
ProviderSuite make_reference_suite(std::span<const std::string> corpus);

std::uint64_t stable_hash(std::string_view s);

}  // namespace maya
