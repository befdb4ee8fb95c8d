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

#include "maya/search/maya_search.hpp"

#include <algorithm>
#include <numeric>

#include <spdlog/spdlog.h>

#include "maya/core/text.hpp"
#include "maya/errors.hpp"
#include "maya/generation/generate.hpp"
#include "maya/victims/wrappers.hpp"

namespace maya {

SearchState SearchState::start(const TextSample& original, LabelIndex reference_label,
                               std::optional<double> reference_score) {
  SearchState s;
  s.original = original;
  s.current_text = normalize_text(original.text);
  s.visited.insert(s.current_text);
  s.reference_label = reference_label;
  s.reference_score = reference_score;
  s.current_score = reference_score;
  return s;
}

const Embedding& SearchState::original_vector(const ProviderSuite& suite) {
  if (original_embedding.empty()) {
    if (!suite.encoder) throw InvalidArgument("search needs a sentence encoder");
    original_embedding = suite.encoder->encode(original.text);
  }
  return original_embedding;
}

void SearchState::advance(std::string next, std::optional<double> score) {
  current_text = normalize_text(next);
  visited.insert(current_text);
  current_score = score;
  ++rounds;
}

VerifyResult verify(const CandidateSet& candidates, Victim& victim, const SearchState& state) {
  if (candidates.empty()) throw NoCandidates("verify: empty candidate set");
  const auto texts = candidates.texts();
  const auto verdicts = victim.predict(texts, state.original.context);
  VerifyResult r;
  r.score_table.reserve(verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    if (!v.has_scores()) throw InvalidArgument("verify needs a score-based victim");
    r.labels.push_back(v.label());
    r.score_table.push_back(v.score_of(state.reference_label));
    if (v.label() != state.reference_label) {
      (candidates.in_v_p(i) ? r.successes_p : r.successes_s).push_back(i);
    }
  }
  return r;
}

namespace {

std::vector<std::size_t> score_order(const std::vector<double>& scores,
                                     std::vector<std::size_t> indices) {
  std::stable_sort(indices.begin(), indices.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return indices;
}

}  // namespace

SuccessSelection select_success(const VerifyResult& result, const CandidateSet& candidates,
                                SearchState& state, const ProviderSuite& suite) {
  SuccessSelection sel;
  if (!result.successes_p.empty()) {
    const auto& base = state.original_vector(suite);
    std::vector<double> sims;
    for (auto i : result.successes_p) {
      sims.push_back(cosine_similarity(base, suite.encoder->encode(candidates.at(i).text)));
    }
    sel.paraphrase = result.successes_p[argmax_lowest(sims)];
    return sel;
  }
  sel.deferred_masks = score_order(result.score_table, result.successes_s);
  return sel;
}

ProbeResult fill_and_probe(const Candidate& masked, Victim& victim, SearchState& state,
                           const ProviderSuite& suite, const AttackConfig& config,
                           ProbeCriterion criterion) {
  if (masked.origin != CandidateOrigin::kMask || !masked.mask_position) {
    throw InvalidArgument("fill_and_probe needs a mask candidate");
  }
  const std::size_t pos = *masked.mask_position;
  const auto source_tokens = tokenize(state.current_text);
  if (pos >= source_tokens.size()) throw InvalidArgument("mask position outside current text");
  const auto masked_tokens = tokenize(masked.text);
  const auto substitutes =
      propose_substitutes(masked.text, pos, source_tokens[pos], config.k, suite);

  std::vector<std::string> fillings;
  for (const auto& s : substitutes) {
    auto filled = splice_tokens(masked_tokens, pos, pos + 1, s.word);
    if (state.visited.contains(filled)) continue;
    if (std::find(fillings.begin(), fillings.end(), filled) != fillings.end()) continue;
    fillings.push_back(std::move(filled));
  }
  if (fillings.empty()) throw ProbeEmpty("no usable substitute for position " + std::to_string(pos));

  ProbeResult result;
  bool have_best = false;
  for (const auto& filled : fillings) {
    const auto verdict = victim.predict_one(filled, state.original.context);
    ++result.queries;
    if (verdict.label() != state.reference_label) {
      result.success_text = filled;
      result.success_label = verdict.label();
      result.best_text = filled;
      return result;
    }
    double value;
    if (criterion == ProbeCriterion::kConfidenceDrop) {
      value = verdict.score_of(state.reference_label);
    } else {
      value = cosine_similarity(state.original_vector(suite), suite.encoder->encode(filled));
    }
    if (!have_best || value < result.best_value) {
      result.best_value = value;
      result.best_text = filled;
      have_best = true;
    }
  }
  return result;
}

namespace {

const ProbeResult* probe_cached(std::size_t index, const CandidateSet& candidates, Victim& victim,
                                SearchState& state, const ProviderSuite& suite,
                                const AttackConfig& config, ProbeCache& cache) {
  auto it = cache.find(index);
  if (it == cache.end()) {
    std::optional<ProbeResult> r;
    try {
      r = fill_and_probe(candidates.at(index), victim, state, suite, config);
    } catch (const ProbeEmpty&) {
    }
    it = cache.emplace(index, std::move(r)).first;
  }
  return it->second ? &*it->second : nullptr;
}

RoundDecision success_from_probe(std::size_t index, const ProbeResult& probe) {
  RoundDecision d;
  d.kind = RoundDecision::Kind::kSuccess;
  d.candidate_index = index;
  d.origin = CandidateOrigin::kMask;
  d.text = *probe.success_text;
  d.label = probe.success_label;
  return d;
}

}  // namespace

RoundDecision pick_most_potential(const VerifyResult& result, const CandidateSet& candidates,
                                  Victim& victim, SearchState& state, const ProviderSuite& suite,
                                  const AttackConfig& config, ProbeCache* cache) {
  ProbeCache local;
  ProbeCache& probes = cache ? *cache : local;
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!state.visited.contains(candidates.at(i).text)) usable.push_back(i);
  }
  const auto order = score_order(result.score_table, usable);
  std::optional<std::size_t> best_p;
  for (auto i : order) {
    if (candidates.in_v_p(i)) {
      best_p = i;
      break;
    }
  }
  auto continue_with_p = [&](std::size_t i) {
    RoundDecision d;
    d.candidate_index = i;
    d.origin = CandidateOrigin::kParaphrase;
    d.text = candidates.at(i).text;
    d.label = result.labels[i];
    d.score = result.score_table[i];
    return d;
  };
  for (auto i : order) {
    if (candidates.in_v_p(i)) return continue_with_p(i);
    const ProbeResult* probe = probe_cached(i, candidates, victim, state, suite, config, probes);
    if (!probe) continue;
    if (probe->success_text) return success_from_probe(i, *probe);
    if (best_p && result.score_table[*best_p] <= probe->best_value) {
      return continue_with_p(*best_p);
    }
    RoundDecision d;
    d.candidate_index = i;
    d.origin = CandidateOrigin::kMask;
    d.text = probe->best_text;
    d.label = state.reference_label;
    d.score = probe->best_value;
    return d;
  }
  throw Exhausted("every candidate has been visited or yields no filling");
}

RoundDecision decide_round(const CandidateSet& candidates, Victim& victim, SearchState& state,
                           const ProviderSuite& suite, const AttackConfig& config) {
  const auto result = verify(candidates, victim, state);
  ProbeCache cache;
  if (!result.successes_p.empty() || !result.successes_s.empty()) {
    const auto sel = select_success(result, candidates, state, suite);
    if (sel.paraphrase) {
      RoundDecision d;
      d.kind = RoundDecision::Kind::kSuccess;
      d.candidate_index = *sel.paraphrase;
      d.origin = CandidateOrigin::kParaphrase;
      d.text = candidates.at(*sel.paraphrase).text;
      d.label = result.labels[*sel.paraphrase];
      d.score = result.score_table[*sel.paraphrase];
      return d;
    }
    for (auto i : sel.deferred_masks) {
      const ProbeResult* probe = probe_cached(i, candidates, victim, state, suite, config, cache);
      if (probe && probe->success_text) return success_from_probe(i, *probe);
    }
  }
  return pick_most_potential(result, candidates, victim, state, suite, config, &cache);
}

AttackOutcome attack(const TextSample& sample, Victim& victim, const ProviderSuite& suite,
                     const AttackConfig& config) {
  config.validate();
  sample.validate();
  AttackOutcome outcome;
  outcome.sample_id = sample.id;
  BudgetedVictim budgeted(victim, config.query_budget);
  const auto gen = config.generation();
  SearchState state;
  try {
    const auto first = budgeted.predict_one(normalize_text(sample.text), sample.context);
    outcome.label_before = first.label();
    if (first.label() != sample.gold_label) {
      outcome.status = AttackStatus::kSkippedMisclassified;
      outcome.queries = budgeted.used();
      return outcome;
    }
    if (!first.has_scores()) throw InvalidArgument("MAYA search needs a score-based victim");
    state = SearchState::start(sample, first.label(), first.score_of(first.label()));
    for (;;) {
      const auto candidates =
          generate_candidates(state.current_sample(), suite, gen, &state.visited);
      if (candidates.empty()) {
        outcome.status = AttackStatus::kFailedExhausted;
        break;
      }
      const double anchor = config.drop_anchor == DropAnchor::kOriginal
                                ? *state.reference_score
                                : state.current_score.value_or(*state.reference_score);
      const auto decision = decide_round(candidates, budgeted, state, suite, config);
      RoundRecord rec;
      rec.round = state.rounds + 1;
      rec.chosen_text = decision.text;
      rec.origin = decision.origin;
      if (decision.score) rec.score_drop = anchor - *decision.score;
      rec.queries_so_far = budgeted.used();
      outcome.trace.push_back(rec);
      if (decision.kind == RoundDecision::Kind::kSuccess) {
        outcome.status = AttackStatus::kSuccess;
        outcome.adversarial_text = decision.text;
        outcome.label_after = decision.label;
        break;
      }
      if (state.visited.contains(decision.text)) {
        outcome.status = AttackStatus::kFailedExhausted;
        break;
      }
      state.advance(decision.text, decision.score);
      if (state.rounds >= config.round_cap) {
        outcome.status = AttackStatus::kFailedCap;
        break;
      }
    }
  } catch (const BudgetExceeded&) {
    outcome.status = AttackStatus::kFailedBudget;
  } catch (const Exhausted&) {
    outcome.status = AttackStatus::kFailedExhausted;
  } catch (const NoCandidates&) {
    outcome.status = AttackStatus::kFailedExhausted;
  }
  outcome.rounds = state.rounds;
  outcome.queries = budgeted.used();
  return outcome;
}

}  // namespace maya
