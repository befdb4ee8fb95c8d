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

#include "maya/harness/provider_registry.hpp"

#include "maya/errors.hpp"
#include "maya/generation/http_providers.hpp"
#include "maya/generation/reference_providers.hpp"
#include "maya/victims/http_victim.hpp"
#include "maya/victims/linear_classifier.hpp"
#include "maya/victims/wrappers.hpp"

namespace maya {

namespace {

bool is_http(const std::string& spec) { return spec.rfind("http:", 0) == 0; }
std::string http_url(const std::string& spec) { return spec.substr(5); }

[[noreturn]] void unknown(const char* slot, const std::string& spec) {
  throw InvalidArgument(std::string("unknown ") + slot + " provider '" + spec + "'");
}

}  // namespace

ProviderSuite build_provider_suite(const ProviderSettings& settings,
                                   std::span<const TextSample> corpus) {
  ProviderSuite suite;
  if (is_http(settings.parser)) {
    suite.parser = std::make_shared<HttpParser>(http_url(settings.parser));
  } else if (settings.parser == "lexicon") {
    suite.parser = std::make_shared<LexiconParser>();
  } else if (settings.parser != "none") {
    unknown("parser", settings.parser);
  }
  for (std::size_t i = 0; i < settings.paraphrasers.size(); ++i) {
    const auto& p = settings.paraphrasers[i];
    if (is_http(p)) {
      suite.paraphrasers.push_back(
          std::make_shared<HttpParaphraser>(http_url(p), "http-paraphraser-" + std::to_string(i)));
    } else if (p == "synonym") {
      suite.paraphrasers.push_back(std::make_shared<SynonymParaphraser>());
    } else {
      unknown("paraphraser", p);
    }
  }
  if (is_http(settings.masked_lm)) {
    suite.masked_lm = std::make_shared<HttpMaskedLm>(http_url(settings.masked_lm));
  } else if (settings.masked_lm == "frequency") {
    std::vector<std::string> texts;
    for (const auto& s : corpus) texts.push_back(s.text);
    suite.masked_lm = std::make_shared<FrequencyMaskedLm>(texts);
  } else {
    unknown("masked_lm", settings.masked_lm);
  }
  if (is_http(settings.encoder)) {
    suite.encoder = std::make_shared<HttpEncoder>(http_url(settings.encoder));
  } else if (settings.encoder == "bag") {
    suite.encoder = std::make_shared<HashedBagEncoder>();
  } else {
    unknown("encoder", settings.encoder);
  }
  if (is_http(settings.grammar)) {
    suite.grammar = std::make_shared<HttpGrammarChecker>(http_url(settings.grammar));
  } else if (settings.grammar == "rules") {
    suite.grammar = std::make_shared<RuleGrammarChecker>();
  } else {
    unknown("grammar", settings.grammar);
  }
  if (settings.antonyms == "dictionary") {
    suite.antonyms = std::make_shared<DictionaryLexicon>();
  } else if (settings.antonyms != "none") {
    unknown("antonyms", settings.antonyms);
  }
  if (settings.perplexity != "none") unknown("perplexity", settings.perplexity);
  suite.validate();
  return suite;
}

VictimPtr open_victim(const std::string& spec, VictimMode mode, int label_count) {
  if (is_http(spec)) return std::make_shared<HttpVictim>(http_url(spec), mode, label_count);
  if (spec.rfind("local:", 0) == 0) {
    VictimPtr local = LinearBowClassifier::load(spec.substr(6));
    return mode == VictimMode::kDecisionBased ? decision_only(local) : local;
  }
  throw InvalidArgument("victim must be local:CKPT or http:URL, got '" + spec + "'");
}

}  // namespace maya
