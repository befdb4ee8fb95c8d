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

#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "maya/core/similarity.hpp"
#include "maya/core/types.hpp"
#include "maya/generation/providers.hpp"
#include "maya/search/config.hpp"
#include "maya/victims/victim.hpp"

namespace maya {

struct SearchState {
  TextSample original;
  std::string current_text;
  std::unordered_set<std::string> visited;
  LabelIndex reference_label = 0;
  // Victim confidence in reference_label on the original text (score-based).
  std::optional<double> reference_score;
  // Same confidence on current_text.
  std::optional<double> current_score;
  int rounds = 0;
  Embedding original_embedding;  // filled lazily

  static SearchState start(const TextSample& original, LabelIndex reference_label,
                           std::optional<double> reference_score);

  TextSample current_sample() const { return original.with_text(current_text); }
  const Embedding& original_vector(const ProviderSuite& suite);
  // Moves to `next`; visited grows and rounds increments.
  void advance(std::string next, std::optional<double> score);
};

struct VerifyResult {
  std::vector<std::size_t> successes_p;   // indices into the candidate set
  std::vector<std::size_t> successes_s;
  std::vector<double> score_table;        // reference-label confidence
  std::vector<LabelIndex> labels;
};

// Queries every candidate once, in one batch. Throws NoCandidates on an
// empty set.
VerifyResult verify(const CandidateSet& candidates, Victim& victim, const SearchState& state);

// Outcome of the success cases: a V_p success wins outright (most similar to
// the original sample text); otherwise the V_s successes are returned in
// score-table order for mask filling.
struct SuccessSelection {
  std::optional<std::size_t> paraphrase;
  std::vector<std::size_t> deferred_masks;
};

SuccessSelection select_success(const VerifyResult& result, const CandidateSet& candidates,
                                SearchState& state, const ProviderSuite& suite);

// How a mask candidate's fillings are ranked when none flips the label.
enum class ProbeCriterion {
  kConfidenceDrop,    // lowest reference-label confidence (needs scores)
  kLowestSimilarity,  // lowest cosine similarity to the original (labels only)
};

struct ProbeResult {
  std::optional<std::string> success_text;
  std::optional<LabelIndex> success_label;
  std::string best_text;
  // Reference-label confidence or similarity of best_text, per criterion.
  double best_value = 0.0;
  std::size_t queries = 0;
};

// Fills the mask with substitutes in probability order, querying one filling
// at a time and stopping at the first label flip. Fillings already visited
// are skipped without a query. Throws ProbeEmpty when nothing is left to try.
ProbeResult fill_and_probe(const Candidate& masked, Victim& victim, SearchState& state,
                           const ProviderSuite& suite, const AttackConfig& config,
                           ProbeCriterion criterion = ProbeCriterion::kConfidenceDrop);

struct RoundDecision {
  enum class Kind { kSuccess, kContinue };
  Kind kind = Kind::kContinue;
  // Candidate the decision was made on: the expert label for imitation.
  std::size_t candidate_index = 0;
  CandidateOrigin origin = CandidateOrigin::kParaphrase;
  std::string text;
  std::optional<LabelIndex> label;
  std::optional<double> score;  // reference-label confidence of text
};

// Probe results per candidate index; nullopt records a ProbeEmpty.
using ProbeCache = std::map<std::size_t, std::optional<ProbeResult>>;

// Pick step: the unvisited candidate with the lowest reference-label
// confidence (ties to the lower index). A V_s winner is filled and probed;
// without a flip its best filling competes with the best V_p entry. Throws
// Exhausted when every candidate is unusable.
RoundDecision pick_most_potential(const VerifyResult& result, const CandidateSet& candidates,
                                  Victim& victim, SearchState& state, const ProviderSuite& suite,
                                  const AttackConfig& config, ProbeCache* cache = nullptr);

// One full Verify -> (success | Pick) decision over a candidate set.
RoundDecision decide_round(const CandidateSet& candidates, Victim& victim, SearchState& state,
                           const ProviderSuite& suite, const AttackConfig& config);

// Runs the search on one sample against a score-based victim.
AttackOutcome attack(const TextSample& sample, Victim& victim, const ProviderSuite& suite,
                     const AttackConfig& config);

}  // namespace maya
