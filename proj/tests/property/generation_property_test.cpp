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

#include <algorithm>

#include <gtest/gtest.h>

#include "gen.hpp"
#include "maya/core/similarity.hpp"
#include "maya/core/text.hpp"
#include "maya/generation/generate.hpp"
#include "maya/generation/reference_providers.hpp"

namespace maya {
namespace {

std::vector<std::string> corpus(std::mt19937_64& rng) {
  std::vector<std::string> out;
  for (int i = 0; i < 40; ++i) out.push_back(testing::random_text(rng, 4, 10));
  return out;
}

TEST(GenerationProperty, MaskCandidatesCoverEveryToken) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto text = testing::random_text(rng, 1, 12);
    const auto toks = tokenize(text);
    const auto masks = generate_mask_candidates(TextSample::make("s", text, 0, 2));
    ASSERT_EQ(masks.size(), toks.size());
    for (std::size_t p = 0; p < masks.size(); ++p) {
      ASSERT_TRUE(masks[p].mask_position);
      EXPECT_EQ(*masks[p].mask_position, p);
      const auto m = tokenize(masks[p].text);
      ASSERT_EQ(m.size(), toks.size());
      for (std::size_t j = 0; j < m.size(); ++j) {
        EXPECT_EQ(m[j], j == p ? std::string(kMaskToken) : toks[j]);
      }
    }
  }
}

TEST(GenerationProperty, SubstitutesOrderedAndFiltered) {
  std::mt19937_64 rng(12);
  const auto suite = make_reference_suite(corpus(rng));
  std::uniform_int_distribution<std::size_t> kdist(1, 15);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto toks = tokenize(testing::random_text(rng, 2, 10));
    const auto pos = std::uniform_int_distribution<std::size_t>(0, toks.size() - 1)(rng);
    const auto masked = splice_tokens(toks, pos, pos + 1, kMaskToken);
    const auto k = kdist(rng);
    const auto subs = propose_substitutes(masked, pos, toks[pos], k, suite);
    EXPECT_LE(subs.size(), k);
    const auto antonyms = suite.antonyms ? suite.antonyms->antonyms(toks[pos])
                                         : std::vector<std::string>{};
    for (std::size_t j = 0; j < subs.size(); ++j) {
      if (j > 0) {
        EXPECT_GE(subs[j - 1].probability, subs[j].probability);
      }
      EXPECT_NE(to_lower(subs[j].word), to_lower(toks[pos]));
      EXPECT_EQ(std::count(antonyms.begin(), antonyms.end(), subs[j].word), 0);
      EXPECT_EQ(count_mask_tokens(subs[j].word), 0u);
    }
  }
}

// Independent replay of the paraphrase filter: for each (constituent,
// paraphraser) pair keep the most similar rewrite whose grammar error count
// does not exceed the sentence's.
TEST(GenerationProperty, ParaphrasesAreFilteredAndMaximal) {
  std::mt19937_64 rng(13);
  const auto texts = corpus(rng);
  const auto suite = make_reference_suite(texts);
  for (int i = 0; i < 60; ++i) {
    const auto sentence = normalize_text(testing::random_text(rng, 3, 9));
    const auto toks = tokenize(sentence);
    const int base = suite.grammar->count_errors(sentence);
    const auto base_emb = suite.encoder->encode(sentence);
    std::set<std::string> expected;
    for (const auto& span : enumerate_constituents(sentence, *suite.parser)) {
      for (const auto& p : suite.paraphrasers) {
        std::optional<std::pair<double, std::string>> best;
        for (const auto& r : p->rewrite(toks, span)) {
          const auto text = splice_tokens(toks, span.start_token, span.end_token, normalize_text(r));
          if (text.empty() || text == sentence || count_mask_tokens(text) > 0) continue;
          if (suite.grammar->count_errors(text) > base) continue;
          const double sim = cosine_similarity(base_emb, suite.encoder->encode(text));
          if (!best || sim > best->first) best = {sim, text};
        }
        if (best) expected.insert(best->second);
      }
    }
    const auto got = generate_paraphrase_candidates(TextSample::make("s", sentence, 0, 2), suite);
    std::set<std::string> got_texts;
    for (const auto& c : got) {
      got_texts.insert(c.text);
      ASSERT_TRUE(c.grammar_errors);
      EXPECT_LE(*c.grammar_errors, base);
      EXPECT_EQ(count_mask_tokens(c.text), 0u);
    }
    EXPECT_EQ(got_texts.size(), got.size());
    EXPECT_EQ(got_texts, expected) << sentence;
  }
}

TEST(GenerationProperty, CandidateSetExcludesVisited) {
  std::mt19937_64 rng(14);
  const auto suite = make_reference_suite(corpus(rng));
  for (int i = 0; i < 60; ++i) {
    const auto sample = TextSample::make("s", testing::random_text(rng, 3, 8), 0, 2);
    const auto full = generate_candidates(sample, suite);
    std::unordered_set<std::string> exclude;
    const auto all = full.texts();
    for (std::size_t j = 0; j < all.size(); j += 2) exclude.insert(all[j]);
    const auto reduced = generate_candidates(sample, suite, {}, &exclude);
    for (const auto& t : reduced.texts()) EXPECT_FALSE(exclude.contains(t));
    EXPECT_EQ(reduced.size(), full.size() - exclude.size());
  }
}

}  // namespace
}  // namespace maya
