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
#include <cmath>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "maya/agent/agent_attack.hpp"
#include "maya/agent/agent_model.hpp"
#include "maya/core/text.hpp"
#include "maya/errors.hpp"
#include "maya/generation/reference_providers.hpp"
#include "maya/search/maya_search.hpp"
#include "maya/victims/wrappers.hpp"

namespace maya {
namespace {

using testing::ScriptedVictim;
using testing::TableEncoder;
using testing::TriggerVictim;

std::shared_ptr<const PairEncoder> bag_encoder(std::size_t buckets = 16) {
  return std::make_shared<BagPairEncoder>(std::make_shared<HashedBagEncoder>(), buckets, 64);
}

// Head that rewards dropping the trigger token and nothing else.
AgentModel trigger_oracle(std::shared_ptr<const PairEncoder> enc, std::size_t buckets) {
  std::vector<double> w(enc->dim(), 0.0);
  w[3 + stable_hash(std::string(testing::kTrigger)) % buckets] = 1.0;
  return AgentModel(std::move(enc), std::move(w), 0.0);
}

CandidateSet sample_set() {
  CandidateSet set("the cat sat on the mat");
  set.add(Candidate::paraphrase("the cat rested on the mat", {0, 6, "S"}));
  set.add(Candidate::paraphrase("a cat sat on a rug", {0, 6, "S"}));
  set.add(Candidate::mask("the [MASK] sat on the mat", 1));
  set.add(Candidate::mask("the cat sat on the [MASK]", 5));
  return set;
}

TEST(AgentModel, OneScorePerCandidate) {
  const auto agent = AgentModel::initialize(bag_encoder(), 7);
  const auto set = sample_set();
  EXPECT_EQ(score_candidates(set, agent).size(), set.size());
  EXPECT_THROW(score_candidates(CandidateSet("x y"), agent), InvalidArgument);
  EXPECT_THROW(score_candidates("x y", std::span<const Candidate>{}, agent), InvalidArgument);
}

TEST(AgentModel, ScoresFollowPermutation) {
  const auto agent = AgentModel::initialize(bag_encoder(), 7);
  const auto set = sample_set();
  std::vector<Candidate> all(set.v_p());
  all.insert(all.end(), set.v_s().begin(), set.v_s().end());
  const auto base = score_candidates(set.source_text(), all, agent);
  std::vector<std::size_t> perm = {3, 0, 2, 1};
  std::vector<Candidate> shuffled;
  for (auto i : perm) shuffled.push_back(all[i]);
  const auto permuted = score_candidates(set.source_text(), shuffled, agent);
  for (std::size_t j = 0; j < perm.size(); ++j) EXPECT_DOUBLE_EQ(permuted[j], base[perm[j]]);
}

TEST(AgentModel, SeededInitialization) {
  const auto a = AgentModel::initialize(bag_encoder(), 11);
  const auto b = AgentModel::initialize(bag_encoder(), 11);
  const auto c = AgentModel::initialize(bag_encoder(), 12);
  EXPECT_EQ(a.parameters(), b.parameters());
  EXPECT_NE(a.parameters(), c.parameters());
  EXPECT_EQ(a.parameters().back(), 0.0);
  const auto p = a.parameters();
  const double sq = std::inner_product(p.begin(), p.end() - 1, p.begin(), 0.0);
  EXPECT_LT(std::sqrt(sq / static_cast<double>(p.size() - 1)), 0.02);
}

TEST(AgentModel, RejectsBadShapes) {
  EXPECT_THROW(AgentModel(bag_encoder(), {1.0, 2.0}, 0.0), InvalidArgument);
  EXPECT_THROW(AgentModel(nullptr, {}, 0.0), InvalidArgument);
  auto agent = AgentModel::initialize(bag_encoder(), 1);
  EXPECT_THROW(agent.set_parameters(std::vector<double>(3, 0.0)), InvalidArgument);
}

TEST(AgentModel, CheckpointRoundTrip) {
  testing::TempDir dir;
  auto agent = AgentModel::initialize(bag_encoder(), 5);
  agent.set_training_rounds(3);
  agent.save(dir.path());
  const auto loaded = AgentModel::load(dir.path(), bag_encoder());
  EXPECT_EQ(loaded.parameters(), agent.parameters());
  EXPECT_EQ(loaded.seed(), 5u);
  EXPECT_EQ(loaded.training_rounds(), 3);
  const auto set = sample_set();
  EXPECT_EQ(score_candidates(set, loaded), score_candidates(set, agent));

  std::ifstream in(dir.path() / "manifest.json");
  const auto manifest = nlohmann::json::parse(in);
  EXPECT_EQ(manifest.at("format"), "maya-agent/1");
  EXPECT_EQ(manifest.at("encoder"), agent.encoder().name());
  EXPECT_EQ(manifest.at("head_shape"), nlohmann::json::array({1, agent.encoder().dim()}));
}

TEST(AgentModel, CheckpointMismatch) {
  testing::TempDir dir;
  AgentModel::initialize(bag_encoder(16), 5).save(dir.path());
  EXPECT_THROW(AgentModel::load(dir.path(), bag_encoder(32)), CheckpointError);

  nlohmann::json params;
  {
    std::ifstream in(dir.path() / "parameters.json");
    params = nlohmann::json::parse(in);
  }
  params["weights"].erase(params["weights"].size() - 1);
  std::ofstream(dir.path() / "parameters.json") << params.dump();
  EXPECT_THROW(AgentModel::load(dir.path(), bag_encoder(16)), CheckpointError);

  testing::TempDir empty;
  EXPECT_THROW(AgentModel::load(empty.path(), bag_encoder(16)), CheckpointError);
}

TEST(BagPairEncoder, NameAndWidth) {
  const BagPairEncoder enc(std::make_shared<HashedBagEncoder>(), 8, 32);
  EXPECT_EQ(enc.dim(), 19u);
  EXPECT_EQ(enc.name().rfind("bag-pair/", 0), 0u);
  const auto f = enc.encode("a b c", "a [MASK] c");
  EXPECT_EQ(f.size(), 19u);
  EXPECT_EQ(f[1], 1.0);
  EXPECT_DOUBLE_EQ(f[2], 0.0);
  EXPECT_EQ(enc.encode("a b c", "a b").at(2), -1.0 / 3.0);
}

TEST(BagPairEncoder, TruncationKeepsCandidate) {
  std::string long_text;
  for (int i = 0; i < 300; ++i) long_text += "tok" + std::to_string(i) + " ";
  const auto pair = truncate_pair(long_text, "short candidate here", 32);
  EXPECT_EQ(pair.candidate, (std::vector<std::string>{"short", "candidate", "here"}));
  EXPECT_EQ(pair.original.size() + pair.candidate.size() + 1, 32u);
  const auto both = truncate_pair("a b", "c d", 32);
  EXPECT_EQ(both.original.size(), 2u);
  const BagPairEncoder enc(std::make_shared<HashedBagEncoder>(), 8, 32);
  EXPECT_NO_THROW(enc.encode(long_text, long_text + " extra"));
}

TEST(AgentModel, RankingIgnoresConstantShift) {
  auto agent = AgentModel::initialize(bag_encoder(), 3);
  const auto set = sample_set();
  SearchState state = SearchState::start(TextSample::make("s", set.source_text(), 1, 2), 1, 0.9);
  const auto before = agent_policy(agent)(state, set);
  auto p = agent.parameters();
  p.back() += 42.0;
  agent.set_parameters(p);
  EXPECT_EQ(agent_policy(agent)(state, set), before);
  EXPECT_EQ(before.size(), set.size());
}

TEST(AgentAttack, ParaphraseRoundCostsOneQuery) {
  const auto data = testing::trigger_dataset(3, 4);
  const auto suite = testing::reference_suite(data);
  const CandidatePolicy prefer_paraphrase = [](const SearchState&, const CandidateSet& set) {
    std::vector<std::size_t> order(set.size());
    std::iota(order.begin(), order.end(), 0);
    return order;
  };
  std::size_t paraphrase_rounds = 0;
  for (const auto& s : data) {
    ScriptedVictim victim({}, {0.2, 0.8});
    const auto o = run_policy_attack(s, victim, prefer_paraphrase, suite, {},
                                     ProbeCriterion::kConfidenceDrop);
    std::size_t prev = 1;
    for (const auto& r : o.trace) {
      if (r.origin == CandidateOrigin::kParaphrase) {
        EXPECT_EQ(r.queries_so_far - prev, 1u);
        ++paraphrase_rounds;
      }
      prev = r.queries_so_far;
    }
    EXPECT_EQ(o.queries, victim.queried().size());
  }
  EXPECT_GT(paraphrase_rounds, 0u);
}

TEST(AgentAttack, DecisionFallbackTakesLeastSimilarFilling) {
  auto enc = std::make_shared<TableEncoder>();
  enc->set("a b c", {1.0, 0.0});
  enc->set("a w0 c", {0.91, std::sqrt(1 - 0.91 * 0.91)});
  enc->set("a w1 c", {0.84, std::sqrt(1 - 0.84 * 0.84)});
  enc->set("a w2 c", {0.88, std::sqrt(1 - 0.88 * 0.88)});
  ProviderSuite suite;
  suite.masked_lm = FrequencyMaskedLm::from_table({{"w0", 3.0}, {"w1", 2.0}, {"w2", 1.0}});
  suite.encoder = enc;
  suite.grammar = std::make_shared<RuleGrammarChecker>();
  const CandidatePolicy middle_mask = [](const SearchState& state, const CandidateSet& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set.at(i).text == "a [MASK] c") return std::vector<std::size_t>{i};
    }
    (void)state;
    return std::vector<std::size_t>{};
  };
  testing::ScoresTrap victim(std::make_shared<ScriptedVictim>(
      std::map<std::string, std::vector<double>>{}, std::vector<double>{0.2, 0.8}));
  AttackConfig config;
  config.round_cap = 1;
  const auto o = run_policy_attack(TextSample::make("s", "a b c", 1, 2), victim, middle_mask,
                                   suite, config, ProbeCriterion::kLowestSimilarity);
  ASSERT_EQ(o.trace.size(), 1u);
  EXPECT_EQ(o.trace[0].chosen_text, "a w1 c");
  EXPECT_FALSE(o.trace[0].score_drop);
  EXPECT_EQ(o.queries, 4u);
}

TEST(AgentAttack, DecisionBasedNeverReadsScores) {
  const auto data = testing::trigger_dataset(10, 9);
  const auto suite = testing::reference_suite(data);
  const auto enc = bag_encoder();
  const auto agent = AgentModel::initialize(enc, 2);
  testing::ScoresTrap victim(std::make_shared<TriggerVictim>());
  for (const auto& s : data) {
    AttackOutcome o;
    EXPECT_NO_THROW(o = agent_attack_decision_based(s, victim, agent, suite, {}));
    EXPECT_NE(o.status, AttackStatus::kSkippedMisclassified);
  }
}

TEST(AgentAttack, ScoreBasedRejectsLabelOnlyVictim) {
  const auto data = testing::trigger_dataset(1, 9);
  const auto agent = AgentModel::initialize(bag_encoder(), 2);
  TriggerVictim victim({std::string(testing::kTrigger)}, VictimMode::kDecisionBased);
  EXPECT_THROW(agent_attack_score_based(data[0], victim, agent, testing::reference_suite(data), {}),
               InvalidArgument);
}

TEST(AgentAttack, ObserverSeesEachRoundBeforeQueries) {
  const auto data = testing::trigger_dataset(4, 13);
  const auto suite = testing::reference_suite(data);
  const auto agent = AgentModel::initialize(bag_encoder(), 2);
  for (const auto& s : data) {
    TriggerVictim victim;
    std::vector<std::size_t> calls_at_observe;
    const auto o = agent_attack_score_based(
        s, victim, agent, suite, {},
        [&](const SearchState& state, const CandidateSet& set, std::size_t chosen) {
          EXPECT_LT(chosen, set.size());
          EXPECT_EQ(state.rounds, static_cast<int>(calls_at_observe.size()));
          calls_at_observe.push_back(victim.texts_seen());
        });
    ASSERT_EQ(calls_at_observe.size(), o.trace.size());
    for (std::size_t r = 0; r < o.trace.size(); ++r) {
      const std::size_t before = r == 0 ? 1 : o.trace[r - 1].queries_so_far;
      EXPECT_EQ(calls_at_observe[r], before);
    }
  }
}

TEST(AgentAttack, OracleAgentNeedsNoMoreQueriesThanSearch) {
  const auto data = testing::trigger_dataset(20, 21);
  const auto suite = testing::reference_suite(data);
  const auto buckets = testing::collision_free_buckets(16);
  const auto agent = trigger_oracle(bag_encoder(buckets), buckets);
  std::size_t agent_total = 0;
  std::size_t maya_total = 0;
  for (const auto& s : data) {
    TriggerVictim v1;
    TriggerVictim v2;
    const auto a = agent_attack_score_based(s, v1, agent, suite, {});
    const auto m = attack(s, v2, suite, {});
    ASSERT_EQ(a.status, AttackStatus::kSuccess) << s.text;
    ASSERT_EQ(m.status, AttackStatus::kSuccess) << s.text;
    EXPECT_LE(a.queries, m.queries) << s.text;
    agent_total += a.queries;
    maya_total += m.queries;
  }
  EXPECT_LT(agent_total, maya_total);
}

TEST(AgentAttack, BudgetRespected) {
  const auto data = testing::trigger_dataset(3, 8);
  const auto suite = testing::reference_suite(data);
  const auto agent = AgentModel::initialize(bag_encoder(), 2);
  AttackConfig config;
  config.query_budget = 3;
  for (const auto& s : data) {
    ScriptedVictim victim({}, {0.2, 0.8});
    const auto o = agent_attack_score_based(s, victim, agent, suite, config);
    EXPECT_EQ(o.status, AttackStatus::kFailedBudget);
    EXPECT_LE(o.queries, 3u);
    EXPECT_EQ(o.queries, victim.queried().size());
  }
}

}  // namespace
}  // namespace maya
