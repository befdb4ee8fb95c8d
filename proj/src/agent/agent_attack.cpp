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

#include "maya/agent/agent_attack.hpp"

#include <algorithm>
#include <numeric>

#include "maya/core/text.hpp"
#include "maya/errors.hpp"
#include "maya/generation/generate.hpp"
#include "maya/victims/wrappers.hpp"

namespace maya {

CandidatePolicy agent_policy(const AgentModel& agent) {
  return [&agent](const SearchState& state, const CandidateSet& candidates) {
    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      scores.push_back(agent.score(state.current_text, candidates.at(i).text));
    }
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
  };
}

namespace {

struct Step {
  bool success = false;
  std::string text;
  CandidateOrigin origin = CandidateOrigin::kParaphrase;
  std::optional<LabelIndex> label;
  std::optional<double> score;
};

}  // namespace

AttackOutcome run_policy_attack(const TextSample& sample, Victim& victim,
                                const CandidatePolicy& policy, const ProviderSuite& suite,
                                const AttackConfig& config, ProbeCriterion criterion,
                                const DecisionObserver& observer) {
  config.validate();
  sample.validate();
  if (!policy) throw InvalidArgument("run_policy_attack: empty policy");
  const bool use_scores = criterion == ProbeCriterion::kConfidenceDrop;
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
    std::optional<double> reference_score;
    if (use_scores) {
      if (!first.has_scores()) throw InvalidArgument("score-based attack needs victim scores");
      reference_score = first.score_of(first.label());
    }
    state = SearchState::start(sample, first.label(), reference_score);
    for (;;) {
      const auto candidates =
          generate_candidates(state.current_sample(), suite, gen, &state.visited);
      if (candidates.empty()) {
        outcome.status = AttackStatus::kFailedExhausted;
        break;
      }
      const auto ranking = policy(state, candidates);
      if (ranking.empty()) {
        outcome.status = AttackStatus::kFailedExhausted;
        break;
      }
      for (auto i : ranking) {
        if (i >= candidates.size()) throw InvalidArgument("policy returned an invalid index");
      }
      if (observer) observer(state, candidates, ranking.front());

      std::optional<double> anchor;
      if (use_scores) {
        anchor = config.drop_anchor == DropAnchor::kOriginal
                     ? *state.reference_score
                     : state.current_score.value_or(*state.reference_score);
      }
      std::optional<Step> step;
      for (auto idx : ranking) {
        const auto& c = candidates.at(idx);
        if (state.visited.contains(c.text)) continue;
        if (candidates.in_v_p(idx)) {
          const auto verdict = budgeted.predict_one(c.text, state.original.context);
          Step s;
          s.text = c.text;
          s.origin = CandidateOrigin::kParaphrase;
          if (verdict.label() != state.reference_label) {
            s.success = true;
            s.label = verdict.label();
          } else if (use_scores) {
            s.score = verdict.score_of(state.reference_label);
          }
          step = std::move(s);
          break;
        }
        try {
          auto probe = fill_and_probe(c, budgeted, state, suite, config, criterion);
          Step s;
          s.origin = CandidateOrigin::kMask;
          if (probe.success_text) {
            s.success = true;
            s.text = *probe.success_text;
            s.label = probe.success_label;
          } else {
            s.text = probe.best_text;
            if (use_scores) s.score = probe.best_value;
          }
          step = std::move(s);
          break;
        } catch (const ProbeEmpty&) {
          continue;
        }
      }
      if (!step) {
        outcome.status = AttackStatus::kFailedExhausted;
        break;
      }
      RoundRecord rec;
      rec.round = state.rounds + 1;
      rec.chosen_text = step->text;
      rec.origin = step->origin;
      if (anchor && step->score) rec.score_drop = *anchor - *step->score;
      rec.queries_so_far = budgeted.used();
      outcome.trace.push_back(rec);
      if (step->success) {
        outcome.status = AttackStatus::kSuccess;
        outcome.adversarial_text = step->text;
        outcome.label_after = step->label;
        break;
      }
      if (state.visited.contains(step->text)) {
        outcome.status = AttackStatus::kFailedExhausted;
        break;
      }
      state.advance(step->text, step->score);
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

AttackOutcome agent_attack_score_based(const TextSample& sample, Victim& victim,
                                       const AgentModel& agent, const ProviderSuite& suite,
                                       const AttackConfig& config,
                                       const DecisionObserver& observer) {
  return run_policy_attack(sample, victim, agent_policy(agent), suite, config,
                           ProbeCriterion::kConfidenceDrop, observer);
}

AttackOutcome agent_attack_decision_based(const TextSample& sample, Victim& victim,
                                          const AgentModel& agent, const ProviderSuite& suite,
                                          const AttackConfig& config,
                                          const DecisionObserver& observer) {
  return run_policy_attack(sample, victim, agent_policy(agent), suite, config,
                           ProbeCriterion::kLowestSimilarity, observer);
}

}  // namespace maya
