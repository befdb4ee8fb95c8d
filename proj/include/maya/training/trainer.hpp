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

#include <cstdint>
#include <span>
#include <vector>

#include "maya/agent/agent_model.hpp"
#include "maya/search/config.hpp"
#include "maya/training/trajectory.hpp"

namespace maya {

inline constexpr double kDefaultLearningRate = 2e-5;
inline constexpr std::size_t kDefaultBatchSize = 16;

struct TrainingConfig {
  double learning_rate = kDefaultLearningRate;
  std::size_t batch_size = kDefaultBatchSize;
  int rounds = 1;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Share of the training samples held out for imitation accuracy.
  double held_out_fraction = 0.2;
  // Attack settings used while rolling out trajectories.
  AttackConfig attack;

  void validate() const;
};

class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t size, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8);
  static AdamOptimizer from_config(std::size_t size, const TrainingConfig& config);

  // Descent step on `params` with gradient `grad`.
  void step(std::span<double> params, std::span<const double> grad);
  std::size_t steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, epsilon_;
  std::vector<double> m_, v_;
  std::size_t t_ = 0;
};

struct LossAndGradient {
  double loss = 0.0;             // l_i, cross-entropy against expert_index
  std::vector<double> gradient;  // over AgentModel::parameters()
};

// Candidate scores act as logits of a k-way softmax.
LossAndGradient trajectory_loss_gradient(const AgentModel& agent, const Trajectory& t);

// g_i: gradient of the weighted loss L_i = k_i * l_i.
LossAndGradient weighted_trajectory_gradient(const AgentModel& agent, const Trajectory& t);

// G' = sum of g_i over the batch divided by sum of k_i.
std::vector<double> accumulate_batch_gradient(const AgentModel& agent,
                                              std::span<const Trajectory> batch);

// sum(k_i * l_i) / sum(k_i).
double weighted_mean_loss(const AgentModel& agent, std::span<const Trajectory> batch);

struct EpochResult {
  double mean_loss = 0.0;  // weighted mean over the pass, before each update
  std::size_t steps = 0;
};

// One pass in dataset order; an optimizer step after every batch_size
// trajectories and after the final partial batch.
EpochResult train_epoch(AgentModel& agent, std::span<const Trajectory> dataset,
                        const TrainingConfig& config, AdamOptimizer& optimizer);

// Argmax of the agent's scores over the trajectory's candidates.
std::size_t agent_choice(const AgentModel& agent, const Trajectory& t);
// Fraction of trajectories where agent_choice equals expert_index.
double imitation_accuracy(const AgentModel& agent, std::span<const Trajectory> trajectories);

}  // namespace maya
