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

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "maya/agent/agent_attack.hpp"
#include "maya/core/text.hpp"
#include "maya/errors.hpp"
#include "maya/generation/reference_providers.hpp"
#include "maya/training/behavior_cloning.hpp"
#include "maya/training/trainer.hpp"
#include "maya/training/trajectory.hpp"
#include "maya/victims/linear_classifier.hpp"

namespace maya {
namespace {

using testing::ScriptedVictim;

// Features looked up by candidate text; anything unknown maps to zeros.
class TablePairEncoder : public PairEncoder {
 public:
  TablePairEncoder(std::size_t dim, std::map<std::string, std::vector<double>> table)
      : dim_(dim), table_(std::move(table)) {}
  std::string name() const override { return "table-pair"; }
  std::size_t dim() const override { return dim_; }
  std::vector<double> encode(std::string_view, std::string_view candidate) const override {
    const auto it = table_.find(std::string(candidate));
    return it == table_.end() ? std::vector<double>(dim_, 0.0) : it->second;
  }

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<double>> table_;
};

// Leading-mask indicator: rewards masking the first token.
class FirstMaskEncoder : public PairEncoder {
 public:
  std::string name() const override { return "first-mask"; }
  std::size_t dim() const override { return 1; }
  std::vector<double> encode(std::string_view, std::string_view candidate) const override {
    return {candidate.starts_with("[MASK]") ? 1.0 : 0.0};
  }
};

Trajectory trajectory_of(std::vector<std::string> texts, std::size_t expert, int round = 1) {
  Trajectory t;
  t.origin_text = "origin text";
  for (auto& s : texts) t.candidates.push_back(Candidate::paraphrase(s, {0, 2, "S"}));
  t.expert_index = expert;
  t.round = round;
  return t;
}

// Softmax cross-entropy oracle over explicit logits.
double ce(const std::vector<double>& z, std::size_t y) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  return -(z[y] - m - std::log(s));
}

TEST(Trajectory, Validation) {
  EXPECT_NO_THROW(trajectory_of({"a", "b"}, 1).validate());
  EXPECT_THROW(trajectory_of({"a"}, 0).validate(), InvalidArgument);
  EXPECT_THROW(trajectory_of({"a", "a"}, 0).validate(), InvalidArgument);
  EXPECT_THROW(trajectory_of({"a", "b"}, 2).validate(), InvalidArgument);
}

TEST(Trajectory, JsonlRoundTrip) {
  testing::TempDir dir;
  const auto path = dir.path() / "log.jsonl";
  std::vector<Trajectory> ts = {trajectory_of({"a", "b", "c"}, 2, 1),
                                trajectory_of({"d", "e"}, 0, 2)};
  ts[1].candidates[1] = Candidate::mask("[MASK] text", 0);
  {
    std::ofstream out(path);
    append_jsonl(out, ts);
  }
  const auto back = read_trajectory_log(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].k(), 3u);
  EXPECT_EQ(back[0].expert_index, 2u);
  EXPECT_EQ(back[1].round, 2);
  EXPECT_EQ(back[1].candidates[1].text, "[MASK] text");
  EXPECT_EQ(back[1].candidates[1].origin, CandidateOrigin::kMask);
  EXPECT_EQ(back[0].origin_text, "origin text");
}

TEST(Loss, WeightedByCandidateCount) {
  // expert logit z, three others at 0: l = -log(e^z / (e^z + 3)) = 0.5
  const double p = std::exp(-0.5);
  const double z = std::log(3.0 * p / (1.0 - p));
  auto enc = std::make_shared<TablePairEncoder>(
      1, std::map<std::string, std::vector<double>>{{"b", {1.0}}});
  const AgentModel agent(enc, {z}, 0.0);
  const auto t = trajectory_of({"a", "b", "c", "d"}, 1);
  EXPECT_NEAR(trajectory_loss_gradient(agent, t).loss, 0.5, 1e-12);
  EXPECT_NEAR(weighted_trajectory_gradient(agent, t).loss, 2.0, 1e-12);
}

TEST(Loss, BatchGradientIsWeightedMean) {
  auto enc = std::make_shared<TablePairEncoder>(
      2, std::map<std::string, std::vector<double>>{
             {"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}, {"c", {0.5, 0.5}}, {"d", {-1.0, 2.0}}});
  const AgentModel agent(enc, {0.3, -0.2}, 0.1);
  const auto t1 = trajectory_of({"a", "b", "c", "d"}, 0);
  const auto t2 = trajectory_of({"d", "c", "b", "a"}, 2);
  const auto g1 = weighted_trajectory_gradient(agent, t1).gradient;
  const auto g2 = weighted_trajectory_gradient(agent, t2).gradient;
  const std::vector<Trajectory> batch = {t1, t2};
  const auto g = accumulate_batch_gradient(agent, batch);
  ASSERT_EQ(g.size(), 3u);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(g[j], (g1[j] + g2[j]) / 8.0, 1e-15);
}

TEST(Loss, GradientMatchesClosedForm) {
  auto enc = std::make_shared<TablePairEncoder>(
      2, std::map<std::string, std::vector<double>>{
             {"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}, {"c", {2.0, -1.0}}});
  const std::vector<double> w = {0.4, -0.7};
  const double b = 0.25;
  const AgentModel agent(enc, w, b);
  const auto t = trajectory_of({"a", "b", "c"}, 2);
  const std::vector<std::vector<double>> x = {{1, 0}, {0, 1}, {2, -1}};
  std::vector<double> z;
  for (const auto& xi : x) z.push_back(w[0] * xi[0] + w[1] * xi[1] + b);
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  std::vector<double> grad(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const double coef = std::exp(z[i] - m) / s - (i == 2 ? 1.0 : 0.0);
    grad[0] += coef * x[i][0];
    grad[1] += coef * x[i][1];
    grad[2] += coef;
  }
  const auto lg = trajectory_loss_gradient(agent, t);
  EXPECT_NEAR(lg.loss, ce(z, 2), 1e-12);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(lg.gradient[j], grad[j], 1e-12);
}

TEST(Loss, BatchGradientMatchesFiniteDifferences) {
  auto enc = std::make_shared<BagPairEncoder>(std::make_shared<HashedBagEncoder>(), 8, 64);
  auto agent = AgentModel::initialize(enc, 4);
  std::vector<Trajectory> batch = {trajectory_of({"x y", "y z", "z x w"}, 1),
                                   trajectory_of({"p q", "q", "r s t", "q p"}, 3),
                                   trajectory_of({"u", "v"}, 0)};
  const auto g = accumulate_batch_gradient(agent, batch);
  auto params = agent.parameters();
  const double h = 1e-5;
  for (std::size_t j = 0; j < params.size(); ++j) {
    auto plus = params;
    auto minus = params;
    plus[j] += h;
    minus[j] -= h;
    agent.set_parameters(plus);
    const double lp = weighted_mean_loss(agent, batch);
    agent.set_parameters(minus);
    const double lm = weighted_mean_loss(agent, batch);
    EXPECT_NEAR(g[j], (lp - lm) / (2 * h), 1e-4) << j;
  }
}

TEST(Adam, MatchesReferenceUpdate) {
  AdamOptimizer opt(2, 0.1, 0.9, 0.999, 1e-8);
  std::vector<double> p = {1.0, -1.0};
  std::vector<double> m(2, 0.0), v(2, 0.0), ref = p;
  const std::vector<std::vector<double>> grads = {{0.5, -2.0}, {0.1, 0.3}, {-0.4, 0.0}};
  for (std::size_t t = 1; t <= grads.size(); ++t) {
    opt.step(p, grads[t - 1]);
    for (std::size_t j = 0; j < 2; ++j) {
      const double g = grads[t - 1][j];
      m[j] = 0.9 * m[j] + 0.1 * g;
      v[j] = 0.999 * v[j] + 0.001 * g * g;
      const double mh = m[j] / (1 - std::pow(0.9, static_cast<double>(t)));
      const double vh = v[j] / (1 - std::pow(0.999, static_cast<double>(t)));
      ref[j] -= 0.1 * mh / (std::sqrt(vh) + 1e-8);
    }
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(p[j], ref[j], 1e-12);
  }
  EXPECT_EQ(opt.steps(), 3u);
  EXPECT_THROW(opt.step(p, std::vector<double>{1.0}), InvalidArgument);
}

TEST(TrainingConfig, DefaultsAndValidation) {
  const TrainingConfig c;
  EXPECT_EQ(c.learning_rate, 2e-5);
  EXPECT_EQ(c.batch_size, 16u);
  EXPECT_NO_THROW(c.validate());
  TrainingConfig bad;
  bad.batch_size = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = {};
  bad.learning_rate = 0.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = {};
  bad.rounds = -1;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(TrainEpoch, StepsPerBatchIncludingPartial) {
  auto enc = std::make_shared<BagPairEncoder>(std::make_shared<HashedBagEncoder>(), 8, 64);
  auto agent = AgentModel::initialize(enc, 4);
  std::vector<Trajectory> data;
  for (int i = 0; i < 5; ++i) data.push_back(trajectory_of({"a" + std::to_string(i), "b"}, 0));
  TrainingConfig config;
  config.batch_size = 2;
  auto opt = AdamOptimizer::from_config(agent.parameter_count(), config);
  const auto r = train_epoch(agent, data, config, opt);
  EXPECT_EQ(r.steps, 3u);
  EXPECT_EQ(opt.steps(), 3u);
  EXPECT_GT(r.mean_loss, 0.0);
}

TEST(TrainEpoch, LearnsSeparableChoices) {
  auto enc = std::make_shared<BagPairEncoder>(std::make_shared<HashedBagEncoder>(), 32, 64);
  auto agent = AgentModel::initialize(enc, 4);
  std::vector<Trajectory> data;
  for (int i = 0; i < 20; ++i) {
    const auto n = std::to_string(i);
    data.push_back(trajectory_of({"keep w" + n, "good w" + n, "other w" + n}, 1));
  }
  for (auto& t : data) t.origin_text = "bad " + t.candidates[0].text.substr(5);
  TrainingConfig config;
  config.learning_rate = 0.05;
  config.batch_size = 4;
  auto opt = AdamOptimizer::from_config(agent.parameter_count(), config);
  const double before = weighted_mean_loss(agent, data);
  for (int e = 0; e < 30; ++e) train_epoch(agent, data, config, opt);
  EXPECT_LT(weighted_mean_loss(agent, data), before);
  EXPECT_EQ(imitation_accuracy(agent, data), 1.0);
}

// Expert that always labels the last candidate.
class LastExpert : public Expert {
 public:
  std::string name() const override { return "last"; }
  std::optional<std::size_t> choose(const SearchState&, const CandidateSet& c) override {
    return c.size() - 1;
  }
};

ProviderSuite mask_suite(int words) {
  std::map<std::string, double> lm;
  for (int i = 0; i < words; ++i) lm["w" + std::to_string(i)] = static_cast<double>(words - i);
  ProviderSuite suite;
  suite.masked_lm = FrequencyMaskedLm::from_table(lm);
  suite.encoder = std::make_shared<HashedBagEncoder>();
  suite.grammar = std::make_shared<RuleGrammarChecker>();
  return suite;
}

TEST(Sampling, OneTrajectoryPerRound) {
  ScriptedVictim victim({}, {0.2, 0.8});
  const AgentModel agent(std::make_shared<FirstMaskEncoder>(), {1.0}, 0.0);
  TrainingConfig config;
  config.attack.round_cap = 3;
  LastExpert expert;
  const std::vector<TextSample> batch = {TextSample::make("s", "a b c d", 1, 2)};
  SamplingStats stats;
  const auto ts = sample_trajectories(batch, victim, agent, mask_suite(30), config, expert, 4,
                                      &stats);
  ASSERT_EQ(ts.size(), 3u);
  EXPECT_EQ(stats.decision_points, 3u);
  for (const auto& t : ts) {
    EXPECT_EQ(t.round, 4);
    EXPECT_EQ(t.expert_index, t.k() - 1);
    EXPECT_NO_THROW(t.validate());
  }
}

TEST(Sampling, RolloutFollowsAgentNotExpert) {
  ScriptedVictim victim({}, {0.2, 0.8});
  const AgentModel agent(std::make_shared<FirstMaskEncoder>(), {1.0}, 0.0);
  TrainingConfig config;
  config.attack.round_cap = 2;
  LastExpert expert;
  const std::vector<TextSample> batch = {TextSample::make("s", "a b c d", 1, 2)};
  SamplingStats stats;
  const auto ts =
      sample_trajectories(batch, victim, agent, mask_suite(30), config, expert, 1, &stats);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts[0].origin_text, "a b c d");
  EXPECT_EQ(ts[0].candidates[ts[0].expert_index].text, "a b c [MASK]");
  const auto next = tokenize(ts[1].origin_text);
  EXPECT_NE(next[0], "a");
  EXPECT_EQ(next[3], "d");
  EXPECT_EQ(stats.divergences, 2u);
}

TEST(Sampling, ExpertRolloutHasNoDivergence) {
  ScriptedVictim victim({}, {0.2, 0.8});
  TrainingConfig config;
  config.attack.round_cap = 2;
  LastExpert expert;
  const std::vector<TextSample> batch = {TextSample::make("s", "a b c d", 1, 2)};
  SamplingStats stats;
  const auto ts = expert_rollouts(batch, victim, mask_suite(30), config, expert, 0, &stats);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(stats.divergences, 0u);
  EXPECT_EQ(tokenize(ts[1].origin_text)[0], "a");
}

TEST(Sampling, NeedsScoreBasedLocalVictim) {
  testing::TriggerVictim victim({std::string(testing::kTrigger)}, VictimMode::kDecisionBased);
  const AgentModel agent(std::make_shared<FirstMaskEncoder>(), {1.0}, 0.0);
  LastExpert expert;
  const auto data = testing::trigger_dataset(1, 1);
  EXPECT_THROW(sample_trajectories(data, victim, agent, mask_suite(5), {}, expert), InvalidArgument);
}

TEST(Experts, MinSimilarityPicksLeastSimilar) {
  auto enc = std::make_shared<testing::TableEncoder>();
  enc->set("a b c", {1.0, 0.0});
  enc->set("x", {0.9, std::sqrt(1 - 0.81)});
  enc->set("y", {0.2, std::sqrt(1 - 0.04)});
  enc->set("z", {0.5, std::sqrt(1 - 0.25)});
  MinSimilarityExpert expert(enc);
  CandidateSet set("a b c");
  for (const char* t : {"x", "y", "z"}) set.add(Candidate::paraphrase(t, {0, 3, "S"}));
  const auto state = SearchState::start(TextSample::make("s", "a b c", 1, 2), 1, 0.9);
  EXPECT_EQ(expert.choose(state, set), 1u);
}

TEST(Experts, MayaExpertMatchesSearchDecision) {
  auto victim = std::make_shared<testing::TriggerVictim>();
  const auto data = testing::trigger_dataset(5, 2);
  const auto suite = testing::reference_suite(data);
  MayaExpert expert(victim, suite, {});
  for (const auto& s : data) {
    auto state = SearchState::start(s, 1, victim->positive_score(s.text));
    const auto set = generate_candidates(s, suite, AttackConfig{}.generation(), &state.visited);
    const auto pick = expert.choose(state, set);
    ASSERT_TRUE(pick);
    auto copy = state;
    EXPECT_EQ(*pick, decide_round(set, *victim, copy, suite, {}).candidate_index);
    EXPECT_EQ(state.visited.size(), 1u);
  }
}

TEST(Loop, ZeroRoundsLeavesAgentUntouched) {
  const auto data = testing::balanced_trigger_dataset(20, 3);
  const auto suite = testing::reference_suite(data);
  TrainingConfig config;
  config.rounds = 0;
  config.seed = 9;
  const auto r = behavior_cloning_loop(data, ArchitectureSpec{}, suite, config);
  const auto fresh = AgentModel::initialize(std::make_shared<BagPairEncoder>(suite.encoder), 9);
  EXPECT_EQ(r.agent.parameters(), fresh.parameters());
  EXPECT_TRUE(r.rounds.empty());
  EXPECT_EQ(r.agent.training_rounds(), 0);
}

TEST(Loop, RoundsLogAndClearBuffer) {
  const auto data = testing::trigger_dataset(12, 5);
  const auto suite = testing::reference_suite(data);
  testing::TempDir dir;
  TrainingConfig config;
  config.rounds = 2;
  config.learning_rate = 0.05;
  config.attack.round_cap = 3;
  BehaviorCloningOptions opts;
  opts.trajectory_log = dir.path() / "traj.jsonl";
  auto victim = std::make_shared<testing::TriggerVictim>();
  const auto r = behavior_cloning_with_victim(data, victim, suite, config, opts);
  ASSERT_EQ(r.rounds.size(), 2u);
  EXPECT_EQ(r.live_buffer_size, 0u);
  EXPECT_EQ(r.agent.training_rounds(), 2);
  EXPECT_GT(r.held_out_size, 0u);
  std::size_t total = 0;
  for (const auto& m : r.rounds) {
    EXPECT_GT(m.trajectories, 0u);
    EXPECT_GT(m.optimizer_steps, 0u);
    total += m.trajectories;
  }
  const auto logged = read_trajectory_log(*opts.trajectory_log);
  EXPECT_EQ(logged.size(), total);
  EXPECT_EQ(logged.front().round, 1);
  EXPECT_EQ(logged.back().round, 2);
}

TEST(Loop, SeededRunsAgree) {
  const auto data = testing::trigger_dataset(10, 6);
  const auto suite = testing::reference_suite(data);
  TrainingConfig config;
  config.rounds = 1;
  config.seed = 3;
  config.learning_rate = 0.05;
  auto victim = std::make_shared<testing::TriggerVictim>();
  const auto a = behavior_cloning_with_victim(data, victim, suite, config);
  const auto b = behavior_cloning_with_victim(data, victim, suite, config);
  EXPECT_EQ(a.agent.parameters(), b.agent.parameters());
}

}  // namespace
}  // namespace maya
