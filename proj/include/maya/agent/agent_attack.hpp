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

#include <functional>
#include <vector>

#include "maya/agent/agent_model.hpp"
#include "maya/search/maya_search.hpp"
#include "maya/victims/victim.hpp"

namespace maya {

// Candidate indices in preference order, best first. The first entry is the
// policy's choice; later entries are fallbacks for a mask candidate with no
// usable filling. An empty ranking ends the attack as exhausted.
using CandidatePolicy =
    std::function<std::vector<std::size_t>(const SearchState&, const CandidateSet&)>;

// Called once per round before any query of that round, with the index the
// policy chose.
using DecisionObserver =
    std::function<void(const SearchState&, const CandidateSet&, std::size_t chosen)>;

// Ranks by descending agent score against the current text, ties to the
// lower index.
CandidatePolicy agent_policy(const AgentModel& agent);

// Generic rollout: per round the policy picks S'. A V_p pick costs one query;
// a V_s pick is filled and probed with `criterion`. Score-based confidence is
// only read when `criterion` is kConfidenceDrop.
AttackOutcome run_policy_attack(const TextSample& sample, Victim& victim,
                                const CandidatePolicy& policy, const ProviderSuite& suite,
                                const AttackConfig& config, ProbeCriterion criterion,
                                const DecisionObserver& observer = {});

AttackOutcome agent_attack_score_based(const TextSample& sample, Victim& victim,
                                       const AgentModel& agent, const ProviderSuite& suite,
                                       const AttackConfig& config,
                                       const DecisionObserver& observer = {});

// Never reads victim scores; the mask fallback takes the filling least
// similar to the original sentence.
AttackOutcome agent_attack_decision_based(const TextSample& sample, Victim& victim,
                                          const AgentModel& agent, const ProviderSuite& suite,
                                          const AttackConfig& config,
                                          const DecisionObserver& observer = {});

}  // namespace maya
