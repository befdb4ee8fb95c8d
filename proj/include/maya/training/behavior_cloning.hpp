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

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maya/agent/agent_attack.hpp"
#include "maya/agent/agent_model.hpp"
#include "maya/training/trainer.hpp"
#include "maya/training/trajectory.hpp"
#include "maya/victims/linear_classifier.hpp"

namespace maya {

// Labels a decision point with the candidate to imitate.
class Expert {
 public:
  virtual ~Expert() = default;
  virtual std::string name() const = 0;
  // nullopt when the expert has no usable choice at this point.
  virtual std::optional<std::size_t> choose(const SearchState& state,
                                            const CandidateSet& candidates) = 0;
};

// The search's Verify/Pick decision against a local victim, on a copy of the
// rollout state.
class MayaExpert : public Expert {
 public:
  MayaExpert(VictimPtr local_victim, ProviderSuite suite, AttackConfig config);
  std::string name() const override { return "maya"; }
  std::optional<std::size_t> choose(const SearchState& state,
                                    const CandidateSet& candidates) override;

 private:
  VictimPtr local_victim_;
  ProviderSuite suite_;
  AttackConfig config_;
};

// Candidate least similar to the current text, ties to the lower index.
class MinSimilarityExpert : public Expert {
 public:
  explicit MinSimilarityExpert(std::shared_ptr<const SentenceEncoder> encoder);
  std::string name() const override { return "min-similarity"; }
  std::optional<std::size_t> choose(const SearchState& state,
                                    const CandidateSet& candidates) override;

 private:
  std::shared_ptr<const SentenceEncoder> encoder_;
};

struct SamplingStats {
  std::size_t decision_points = 0;
  // Decision points where the rollout advanced on a candidate other than
  // the expert's.
  std::size_t divergences = 0;
  std::size_t skipped_samples = 0;
};

// Rolls each sample out with the agent's own choices against the local
// victim and records the expert label at every decision point.
std::vector<Trajectory> sample_trajectories(std::span<const TextSample> batch, Victim& local_victim,
                                            const AgentModel& agent, const ProviderSuite& suite,
                                            const TrainingConfig& config, Expert& expert,
                                            int round = 0, SamplingStats* stats = nullptr);

// Same, but the rollout follows the expert.
std::vector<Trajectory> expert_rollouts(std::span<const TextSample> batch, Victim& local_victim,
                                        const ProviderSuite& suite, const TrainingConfig& config,
                                        Expert& expert, int round = 0,
                                        SamplingStats* stats = nullptr);

struct RoundMetrics {
  int round = 0;
  std::size_t trajectories = 0;
  std::size_t divergences = 0;
  std::size_t optimizer_steps = 0;
  double mean_loss = 0.0;
  double held_out_accuracy = 0.0;
};

using ExpertFactory = std::function<std::unique_ptr<Expert>(VictimPtr local_victim)>;

struct BehaviorCloningOptions {
  // Defaults to BagPairEncoder over the suite's sentence encoder.
  std::shared_ptr<const PairEncoder> encoder;
  // Defaults to MayaExpert.
  ExpertFactory make_expert;
  // Every round's trajectories are appended here as JSONL.
  std::optional<std::filesystem::path> trajectory_log;
};

struct BehaviorCloningResult {
  AgentModel agent;
  std::vector<RoundMetrics> rounds;
  std::size_t held_out_size = 0;
  // Size of the in-memory trajectory buffer on return.
  std::size_t live_buffer_size = 0;
  VictimPtr local_victim;
};

// Trains the local victim once on train_data, then runs the imitation loop.
BehaviorCloningResult behavior_cloning_loop(std::span<const TextSample> train_data,
                                            const ArchitectureSpec& arch,
                                            const ProviderSuite& suite,
                                            const TrainingConfig& config,
                                            const BehaviorCloningOptions& options = {});

// Imitation loop against an already trained local victim.
BehaviorCloningResult behavior_cloning_with_victim(std::span<const TextSample> train_data,
                                                   VictimPtr local_victim,
                                                   const ProviderSuite& suite,
                                                   const TrainingConfig& config,
                                                   const BehaviorCloningOptions& options = {});

}  // namespace maya
