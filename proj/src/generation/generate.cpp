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

#include "maya/generation/generate.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "maya/core/similarity.hpp"
#include "maya/core/text.hpp"
#include "maya/errors.hpp"

namespace maya {

std::vector<ConstituentSpan> enumerate_constituents(std::string_view sentence,
                                                    const ConstituencyParser& parser) {
  const auto tokens = tokenize(sentence);
  if (tokens.empty()) throw InvalidArgument("enumerate_constituents: empty sentence");
  std::vector<ConstituentSpan> raw;
  try {
    raw = parser.parse(tokens);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("parser '") + parser.name() + "' failed: " + e.what());
  }
  const std::size_t n = tokens.size();
  std::vector<ConstituentSpan> out;
  bool have_root = false;
  for (auto& span : raw) {
    if (span.start_token >= span.end_token || span.end_token > n) {
      throw ParseError("parser '" + parser.name() + "' returned an invalid span");
    }
    if (span.start_token == 0 && span.end_token == n) {
      if (have_root) continue;
      have_root = true;
    }
    out.push_back(std::move(span));
  }
  if (!have_root) out.push_back(ConstituentSpan{0, n, "S"});
  std::stable_sort(out.begin(), out.end(), [](const ConstituentSpan& a, const ConstituentSpan& b) {
    if (a.start_token != b.start_token) return a.start_token < b.start_token;
    return a.length() > b.length();
  });
  return out;
}

std::vector<Candidate> generate_paraphrase_candidates(const TextSample& sample,
                                                      const ProviderSuite& suite,
                                                      const GenerationOptions& options) {
  if (!suite.can_paraphrase()) return {};
  if (!suite.grammar || !suite.encoder) {
    throw InvalidArgument("paraphrase generation needs a grammar checker and an encoder");
  }
  const std::string sentence = normalize_text(sample.text);
  const auto tokens = tokenize(sentence);
  const auto spans = enumerate_constituents(sentence, *suite.parser);
  const int base_errors = suite.grammar->count_errors(sentence);
  const Embedding base_embedding = suite.encoder->encode(sentence);

  std::vector<Candidate> out;
  std::unordered_set<std::string> emitted;
  for (const auto& span : spans) {
    if (span.length() < options.min_span_tokens) continue;
    if (options.constituent_allowlist && !options.constituent_allowlist->contains(span.tag)) {
      continue;
    }
    for (const auto& paraphraser : suite.paraphrasers) {
      std::vector<std::string> rewrites;
      try {
        rewrites = paraphraser->rewrite(tokens, span);
      } catch (const std::exception& e) {
        spdlog::warn("paraphraser '{}' failed on span [{}, {}) {}: {}", paraphraser->name(),
                     span.start_token, span.end_token, span.tag, e.what());
        continue;
      }
      std::optional<Candidate> best;
      for (const auto& rewrite : rewrites) {
        const std::string rewritten = normalize_text(rewrite);
        if (count_mask_tokens(rewritten) != 0) continue;
        const std::string text =
            splice_tokens(tokens, span.start_token, span.end_token, rewritten);
        if (text.empty() || text == sentence) continue;
        const int errors = suite.grammar->count_errors(text);
        if (errors > base_errors) continue;
        double sim;
        try {
          sim = cosine_similarity(base_embedding, suite.encoder->encode(text));
        } catch (const DegenerateEmbedding&) {
          continue;
        }
        if (!best || sim > *best->similarity) {
          best = Candidate::paraphrase(text, span, paraphraser->name(), sim, errors);
        }
      }
      if (best && emitted.insert(best->text).second) out.push_back(std::move(*best));
    }
  }
  return out;
}

std::vector<Candidate> generate_mask_candidates(const TextSample& sample) {
  const auto tokens = tokenize(sample.text);
  if (tokens.empty()) throw InvalidArgument("generate_mask_candidates: empty sentence");
  std::vector<Candidate> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out.push_back(Candidate::mask(splice_tokens(tokens, i, i + 1, kMaskToken), i));
  }
  return out;
}

std::vector<Substitute> propose_substitutes(std::string_view masked_text, std::size_t position,
                                            std::string_view original_word, std::size_t k,
                                            const ProviderSuite& suite) {
  if (!suite.masked_lm) throw SubstituteError("no masked language model configured");
  const auto tokens = tokenize(masked_text);
  if (count_mask_tokens(masked_text) != 1 || position >= tokens.size() ||
      tokens[position] != kMaskToken) {
    throw InvalidArgument("propose_substitutes: text must hold exactly one mask at position");
  }
  if (k == 0) return {};
  std::unordered_set<std::string> excluded{to_lower(original_word), to_lower(kMaskToken)};
  if (suite.antonyms) {
    for (const auto& a : suite.antonyms->antonyms(original_word)) excluded.insert(to_lower(a));
  }
  std::vector<Substitute> proposals;
  try {
    proposals = suite.masked_lm->fill(tokens, position, k + excluded.size());
  } catch (const SubstituteError&) {
    throw;
  } catch (const std::exception& e) {
    throw SubstituteError(std::string("masked LM failed: ") + e.what());
  }
  std::vector<Substitute> out;
  std::unordered_set<std::string> seen;
  for (auto& s : proposals) {
    const auto word = normalize_text(s.word);
    if (word.empty() || tokenize(word).size() != 1) continue;
    const auto key = to_lower(word);
    if (excluded.contains(key) || !seen.insert(key).second) continue;
    if (!out.empty() && s.probability > out.back().probability) {
      throw SubstituteError("masked LM returned substitutes out of probability order");
    }
    out.push_back({word, s.probability});
    if (out.size() == k) break;
  }
  return out;
}

CandidateSet generate_candidates(const TextSample& sample, const ProviderSuite& suite,
                                 const GenerationOptions& options,
                                 const std::unordered_set<std::string>* exclude) {
  CandidateSet set(sample.text);
  auto keep = [&](const Candidate& c) { return !exclude || !exclude->contains(c.text); };
  if (suite.can_paraphrase()) {
    try {
      for (auto& c : generate_paraphrase_candidates(sample, suite, options)) {
        if (keep(c)) set.add(std::move(c));
      }
    } catch (const Error& e) {
      spdlog::warn("sample '{}': paraphrase path unavailable ({}); using masks only", sample.id,
                   e.what());
    }
  }
  for (auto& c : generate_mask_candidates(sample)) {
    if (keep(c)) set.add(std::move(c));
  }
  return set;
}

}  // namespace maya
