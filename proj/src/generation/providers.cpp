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

#include "maya/generation/providers.hpp"

#include <mutex>

#include "maya/errors.hpp"

namespace maya {

namespace {

class LockedParser : public ConstituencyParser {
 public:
  explicit LockedParser(std::shared_ptr<const ConstituencyParser> p) : inner_(std::move(p)) {}
  std::string name() const override { return inner_->name(); }
  ProviderTraits traits() const override { return {inner_->traits().deterministic, true}; }
  std::vector<ConstituentSpan> parse(std::span<const std::string> tokens) const override {
    std::lock_guard lock(mu_);
    return inner_->parse(tokens);
  }

 private:
  std::shared_ptr<const ConstituencyParser> inner_;
  mutable std::mutex mu_;
};

class LockedParaphraser : public Paraphraser {
 public:
  explicit LockedParaphraser(std::shared_ptr<const Paraphraser> p) : inner_(std::move(p)) {}
  std::string name() const override { return inner_->name(); }
  ProviderTraits traits() const override { return {inner_->traits().deterministic, true}; }
  std::vector<std::string> rewrite(std::span<const std::string> tokens,
                                   const ConstituentSpan& span) const override {
    std::lock_guard lock(mu_);
    return inner_->rewrite(tokens, span);
  }

 private:
  std::shared_ptr<const Paraphraser> inner_;
  mutable std::mutex mu_;
};

class LockedMaskedLm : public MaskedLanguageModel {
 public:
  explicit LockedMaskedLm(std::shared_ptr<const MaskedLanguageModel> p) : inner_(std::move(p)) {}
  std::string name() const override { return inner_->name(); }
  ProviderTraits traits() const override { return {inner_->traits().deterministic, true}; }
  std::vector<Substitute> fill(std::span<const std::string> tokens, std::size_t position,
                               std::size_t top_n) const override {
    std::lock_guard lock(mu_);
    return inner_->fill(tokens, position, top_n);
  }

 private:
  std::shared_ptr<const MaskedLanguageModel> inner_;
  mutable std::mutex mu_;
};

class LockedEncoder : public SentenceEncoder {
 public:
  explicit LockedEncoder(std::shared_ptr<const SentenceEncoder> p) : inner_(std::move(p)) {}
  std::string name() const override { return inner_->name(); }
  ProviderTraits traits() const override { return {inner_->traits().deterministic, true}; }
  Embedding encode(std::string_view text) const override {
    std::lock_guard lock(mu_);
    return inner_->encode(text);
  }

 private:
  std::shared_ptr<const SentenceEncoder> inner_;
  mutable std::mutex mu_;
};

class LockedGrammar : public GrammarChecker {
 public:
  explicit LockedGrammar(std::shared_ptr<const GrammarChecker> p) : inner_(std::move(p)) {}
  std::string name() const override { return inner_->name(); }
  ProviderTraits traits() const override { return {inner_->traits().deterministic, true}; }
  int count_errors(std::string_view text) const override {
    std::lock_guard lock(mu_);
    return inner_->count_errors(text);
  }

 private:
  std::shared_ptr<const GrammarChecker> inner_;
  mutable std::mutex mu_;
};

class LockedLexicon : public LexicalRelations {
 public:
  explicit LockedLexicon(std::shared_ptr<const LexicalRelations> p) : inner_(std::move(p)) {}
  std::string name() const override { return inner_->name(); }
  ProviderTraits traits() const override { return {inner_->traits().deterministic, true}; }
  std::vector<std::string> antonyms(std::string_view word) const override {
    std::lock_guard lock(mu_);
    return inner_->antonyms(word);
  }

 private:
  std::shared_ptr<const LexicalRelations> inner_;
  mutable std::mutex mu_;
};

class LockedPerplexity : public PerplexityModel {
 public:
  explicit LockedPerplexity(std::shared_ptr<const PerplexityModel> p) : inner_(std::move(p)) {}
  std::string name() const override { return inner_->name(); }
  ProviderTraits traits() const override { return {inner_->traits().deterministic, true}; }
  double perplexity(std::string_view text) const override {
    std::lock_guard lock(mu_);
    return inner_->perplexity(text);
  }

 private:
  std::shared_ptr<const PerplexityModel> inner_;
  mutable std::mutex mu_;
};

template <typename Locked, typename T>
std::shared_ptr<const T> lock_if_needed(const std::shared_ptr<const T>& p) {
  if (!p || p->traits().thread_safe) return p;
  return std::make_shared<Locked>(p);
}

}  // namespace

void ProviderSuite::validate() const {
  if (!masked_lm) throw InvalidArgument("provider suite: masked language model missing");
  if (!encoder) throw InvalidArgument("provider suite: sentence encoder missing");
  if (!paraphrasers.empty() && !parser) {
    throw InvalidArgument("provider suite: paraphrasers given without a parser");
  }
  if (can_paraphrase() && !grammar) {
    throw InvalidArgument("provider suite: grammar checker missing");
  }
  for (const auto& p : paraphrasers) {
    if (!p) throw InvalidArgument("provider suite: null paraphraser");
  }
}

ProviderSuite ProviderSuite::serialized() const {
  ProviderSuite out;
  out.parser = lock_if_needed<LockedParser>(parser);
  for (const auto& p : paraphrasers) out.paraphrasers.push_back(lock_if_needed<LockedParaphraser>(p));
  out.masked_lm = lock_if_needed<LockedMaskedLm>(masked_lm);
  out.encoder = lock_if_needed<LockedEncoder>(encoder);
  out.grammar = lock_if_needed<LockedGrammar>(grammar);
  out.antonyms = lock_if_needed<LockedLexicon>(antonyms);
  out.perplexity = lock_if_needed<LockedPerplexity>(perplexity);
  return out;
}

}  // namespace maya
