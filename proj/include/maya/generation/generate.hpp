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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "maya/core/types.hpp"
#include "maya/generation/providers.hpp"

namespace maya {

struct GenerationOptions {
  // Spans shorter than this are not paraphrased. 1 keeps pre-terminals.
  std::size_t min_span_tokens = 1;
  // When set, only constituents with these tags are paraphrased.
  std::optional<std::set<std::string>> constituent_allowlist;
};

// All constituents of `sentence`, ordered by (start, descending length), with
// the whole-sentence span present exactly once. Throws ParseError when the
// parser fails or returns spans outside the sentence.
std::vector<ConstituentSpan> enumerate_constituents(std::string_view sentence,
                                                    const ConstituencyParser& parser);

// V_p for the sample's text. For every (constituent, paraphraser) pair the
// rewrites are spliced into the sentence, rewrites with more grammar errors
// than the sentence are dropped, and the survivor most similar to the
// sentence is kept. A failing paraphraser only loses its own pair.
std::vector<Candidate> generate_paraphrase_candidates(const TextSample& sample,
                                                      const ProviderSuite& suite,
                                                      const GenerationOptions& options = {});

// V_s: one candidate per token with that token replaced by the mask.
std::vector<Candidate> generate_mask_candidates(const TextSample& sample);

// Up to k fillers for the mask at `position`, probability non-increasing,
// excluding the original word and its antonyms.
std::vector<Substitute> propose_substitutes(std::string_view masked_text, std::size_t position,
                                            std::string_view original_word, std::size_t k,
                                            const ProviderSuite& suite);

// V_p and V_s together. Paraphrase-path failures degrade to mask-only
// generation; texts in `exclude` are left out.
CandidateSet generate_candidates(const TextSample& sample, const ProviderSuite& suite,
                                 const GenerationOptions& options = {},
                                 const std::unordered_set<std::string>* exclude = nullptr);

}  // namespace maya
