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

#include "maya/training/behavior_cloning.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>

#include <spdlog/spdlog.h>

#include "maya/core/similarity.hpp"
#include "maya/errors.hpp"

namespace maya {

MayaExpert::MayaExpert(VictimPtr local_victim, ProviderSuite suite, AttackConfig config)
    : local_victim_(std::move(local_victim)), suite_(std::move(suite)), config_(std::move(config)) {
  if (!local_victim_) throw InvalidArgument("MayaExpert: null local victim");
  config_.validate();
}

std::optional<std::size_t> MayaExpert::choose(const SearchState& state,
                                              const CandidateSet& candidates) {
  SearchState scratch = state;
  try {
    return decide_round(candidates, *local_victim_, scratch, suite_, config_).candidate_index;
  } catch (const Exhausted&) {
    return std::nullopt;
  } catch (const NoCandidates&) {
    return std::nullopt;
  }
}

MinSimilarityExpert::MinSimilarityExpert(std::shared_ptr<const SentenceEncoder> encoder)
    : encoder_(std::move(encoder)) {
  if (!encoder_) throw InvalidArgument("MinSimilarityExpert: null encoder");
}

std::optional<std::size_t> MinSimilarityExpert::choose(const SearchState& state,
                                                       const CandidateSet& candidates) {
  if (candidates.empty()) return std::nullopt;
  const auto origin = encoder_->encode(state.current_text);
  std::vector<double> sims;
  sims.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    sims.push_back(cosine_similarity(origin, encoder_->encode(candidates.at(i).text)));
  }
  return argmin_lowest(sims);
}

namespace {

Trajectory make_trajectory(const SearchState& state, const CandidateSet& candidates,
                           std::size_t expert_index, int round) {
  Trajectory t;
  t.origin_text = state.current_text;
  t.candidates.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) t.candidates.push_back(candidates.at(i));
  t.expert_index = expert_index;
  t.round = round;
  return t;
}

std::vector<Trajectory> rollouts(std::span<const TextSample> batch, Victim& local_victim,
                                 const CandidatePolicy& policy, const ProviderSuite& suite,
                                 const TrainingConfig& config, Expert& expert, int round,
                                 SamplingStats* stats) {
  std::vector<Trajectory> out;
  SamplingStats local;
  for (const auto& sample : batch) {
    std::vector<Trajectory> episode;
    std::size_t divergences = 0;
    auto observer = [&](const SearchState& state, const CandidateSet& candidates,
                        std::size_t chosen) {
      if (candidates.size() < 2) return;
      const auto label = expert.choose(state, candidates);
      if (!label) return;
      episode.push_back(make_trajectory(state, candidates, *label, round));
      if (chosen != *label) ++divergences;
    };
    try {
      run_policy_attack(sample, local_victim, policy, suite, config.attack,
                        ProbeCriterion::kConfidenceDrop, observer);
    } catch (const Error& e) {
      spdlog::warn("trajectory sampling skipped sample '{}': {}", sample.id, e.what());
      ++local.skipped_samples;
      continue;
    }
    local.decision_points += episode.size();
    local.divergences += divergences;
    std::move(episode.begin(), episode.end(), std::back_inserter(out));
  }
  if (stats) {
    stats->decision_points += local.decision_points;
    stats->divergences += local.divergences;
    stats->skipped_samples += local.skipped_samples;
  }
  return out;
}

}  // namespace

std::vector<Trajectory> sample_trajectories(std::span<const TextSample> batch, Victim& local_victim,
                                            const AgentModel& agent, const ProviderSuite& suite,
                                            const TrainingConfig& config, Expert& expert,
                                            int round, SamplingStats* stats) {
  if (local_victim.capability().mode != VictimMode::kScoreBased) {
    throw InvalidArgument("trajectory sampling needs a score-based local victim");
  }
  return rollouts(batch, local_victim, agent_policy(agent), suite, config, expert, round, stats);
}

std::vector<Trajectory> expert_rollouts(std::span<const TextSample> batch, Victim& local_victim,
                                        const ProviderSuite& suite, const TrainingConfig& config,
                                        Expert& expert, int round, SamplingStats* stats) {
  CandidatePolicy follow = [&expert](const SearchState& state, const CandidateSet& candidates) {
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    if (const auto pick = expert.choose(state, candidates)) {
      std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(*pick),
                  order.begin() + static_cast<std::ptrdiff_t>(*pick) + 1);
    }
    return order;
  };
  return rollouts(batch, local_victim, follow, suite, config, expert, round, stats);
}

BehaviorCloningResult behavior_cloning_loop(std::span<const TextSample> train_data,
                                            const ArchitectureSpec& arch,
                                            const ProviderSuite& suite,
                                            const TrainingConfig& config,
                                            const BehaviorCloningOptions& options) {
  if (train_data.empty()) throw InvalidArgument("behavior cloning needs training data");
  VictimPtr local = train_local_victim(train_data, arch);
  return behavior_cloning_with_victim(train_data, std::move(local), suite, config, options);
}

BehaviorCloningResult behavior_cloning_with_victim(std::span<const TextSample> train_data,
                                                   VictimPtr local_victim,
                                                   const ProviderSuite& suite,
                                                   const TrainingConfig& config,
                                                   const BehaviorCloningOptions& options) {
  config.validate();
  suite.validate();
  if (train_data.empty()) throw InvalidArgument("behavior cloning needs training data");
  if (!local_victim) throw InvalidArgument("behavior cloning needs a local victim");

  std::shared_ptr<const PairEncoder> encoder = options.encoder;
  if (!encoder) encoder = std::make_shared<BagPairEncoder>(suite.encoder);
  auto expert = options.make_expert
                    ? options.make_expert(local_victim)
                    : std::make_unique<MayaExpert>(local_victim, suite, config.attack);

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(train_data.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  auto held_count = static_cast<std::size_t>(
      std::llround(config.held_out_fraction * static_cast<double>(train_data.size())));
  if (held_count >= train_data.size()) held_count = train_data.size() - 1;
  std::vector<TextSample> held, train;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < held_count ? held : train).push_back(train_data[order[i]]);
  }

  BehaviorCloningResult result{AgentModel::initialize(encoder, config.seed), {}, 0, 0,
                               local_victim};
  if (config.rounds == 0) return result;

  const auto held_out = expert_rollouts(held, *local_victim, suite, config, *expert, 0);
  result.held_out_size = held_out.size();

  std::optional<std::ofstream> log;
  if (options.trajectory_log) {
    log.emplace(*options.trajectory_log, std::ios::trunc);
    if (!*log) throw Error("cannot open trajectory log " + options.trajectory_log->string());
  }

  auto optimizer = AdamOptimizer::from_config(result.agent.parameter_count(), config);
  std::vector<Trajectory> dataset;
  for (int round = 1; round <= config.rounds; ++round) {
    dataset.clear();
    SamplingStats stats;
    dataset = sample_trajectories(train, *local_victim, result.agent, suite, config, *expert,
                                  round, &stats);
    RoundMetrics m;
    m.round = round;
    m.trajectories = dataset.size();
    m.divergences = stats.divergences;
    if (!dataset.empty()) {
      if (log) append_jsonl(*log, dataset);
      std::shuffle(dataset.begin(), dataset.end(), rng);
      const auto epoch = train_epoch(result.agent, dataset, config, optimizer);
      m.optimizer_steps = epoch.steps;
      m.mean_loss = epoch.mean_loss;
    }
    dataset.clear();
    result.agent.set_training_rounds(round);
    m.held_out_accuracy = imitation_accuracy(result.agent, held_out);
    spdlog::info("round {}: {} trajectories, {} divergent, loss {:.4f}, held-out accuracy {:.3f}",
                 round, m.trajectories, m.divergences, m.mean_loss, m.held_out_accuracy);
    result.rounds.push_back(m);
  }
  result.live_buffer_size = dataset.size();
  return result;
}

}  // namespace maya
