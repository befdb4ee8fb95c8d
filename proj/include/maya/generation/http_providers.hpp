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

#include <string>

#include "maya/generation/providers.hpp"
#include "maya/victims/http_victim.hpp"

namespace maya {

// Providers backed by a remote service, one endpoint per capability, using the
// same JSON conventions as the victim protocol:
//   POST /parse       {"tokens": [...]}                       -> {"spans": [{"start","end","tag"}...]}
//   POST /paraphrase  {"tokens": [...], "span": {...}, "paraphraser": name}
//                                                             -> {"rewrites": [string...]}
//   POST /fill_mask   {"tokens": [...], "position": i, "top_n": n}
//                                                             -> {"substitutes": [{"word","probability"}...]}
//   POST /embed       {"texts": [...]}                        -> {"embeddings": [[float...]...]}
//   POST /grammar     {"texts": [...]}                        -> {"errors": [int...]}
// Transport failures, non-200 answers and malformed bodies raise the error
// type of the capability (ParseError, ParaphraseError, SubstituteError,
// ProviderError).

class HttpParser : public ConstituencyParser {
 public:
  explicit HttpParser(std::string url);
  std::string name() const override { return "http-parser"; }
  std::vector<ConstituentSpan> parse(std::span<const std::string> tokens) const override;

 private:
  HttpEndpoint endpoint_;
};

class HttpParaphraser : public Paraphraser {
 public:
  HttpParaphraser(std::string url, std::string name);
  std::string name() const override { return name_; }
  std::vector<std::string> rewrite(std::span<const std::string> sentence_tokens,
                                   const ConstituentSpan& span) const override;

 private:
  HttpEndpoint endpoint_;
  std::string name_;
};

class HttpMaskedLm : public MaskedLanguageModel {
 public:
  explicit HttpMaskedLm(std::string url);
  std::string name() const override { return "http-mlm"; }
  std::vector<Substitute> fill(std::span<const std::string> tokens, std::size_t position,
                               std::size_t top_n) const override;

 private:
  HttpEndpoint endpoint_;
};

class HttpEncoder : public SentenceEncoder {
 public:
  explicit HttpEncoder(std::string url);
  std::string name() const override { return "http-encoder"; }
  Embedding encode(std::string_view text) const override;

 private:
  HttpEndpoint endpoint_;
};

class HttpGrammarChecker : public GrammarChecker {
 public:
  explicit HttpGrammarChecker(std::string url);
  std::string name() const override { return "http-grammar"; }
  int count_errors(std::string_view text) const override;

 private:
  HttpEndpoint endpoint_;
};

}  // namespace maya
