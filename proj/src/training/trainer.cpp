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

#include "maya/training/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "maya/errors.hpp"

namespace maya {

void TrainingConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("learning rate must be positive");
  }
  if (batch_size == 0) throw InvalidArgument("batch size must be positive");
  if (rounds < 0) throw InvalidArgument("rounds must be non-negative");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0)) {
    throw InvalidArgument("invalid Adam hyperparameters");
  }
  if (!(held_out_fraction >= 0.0 && held_out_fraction < 1.0)) {
    throw InvalidArgument("held_out_fraction must be in [0, 1)");
  }
  attack.validate();
}

AdamOptimizer::AdamOptimizer(std::size_t size, double learning_rate, double beta1, double beta2,
                             double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(size), v_(size) {}

AdamOptimizer AdamOptimizer::from_config(std::size_t size, const TrainingConfig& config) {
  return AdamOptimizer(size, config.learning_rate, config.beta1, config.beta2, config.epsilon);
}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw InvalidArgument("optimizer size mismatch");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + epsilon_);
  }
}

LossAndGradient trajectory_loss_gradient(const AgentModel& agent, const Trajectory& t) {
  t.validate();
  const std::size_t k = t.k();
  std::vector<std::vector<double>> feats;
  feats.reserve(k);
  std::vector<double> logits;
  logits.reserve(k);
  for (const auto& c : t.candidates) {
    feats.push_back(agent.features(t.origin_text, c.text));
    logits.push_back(agent.score_features(feats.back()));
  }
  const double mx = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double s : logits) z += std::exp(s - mx);
  const double log_z = mx + std::log(z);

  LossAndGradient out;
  out.loss = log_z - logits[t.expert_index];
  out.gradient.assign(agent.parameter_count(), 0.0);
  const std::size_t bias = out.gradient.size() - 1;
  for (std::size_t j = 0; j < k; ++j) {
    const double coef = std::exp(logits[j] - log_z) - (j == t.expert_index ? 1.0 : 0.0);
    for (std::size_t d = 0; d < feats[j].size(); ++d) out.gradient[d] += coef * feats[j][d];
    out.gradient[bias] += coef;
  }
  return out;
}

LossAndGradient weighted_trajectory_gradient(const AgentModel& agent, const Trajectory& t) {
  auto lg = trajectory_loss_gradient(agent, t);
  const double k = static_cast<double>(t.k());
  lg.loss *= k;
  for (auto& g : lg.gradient) g *= k;
  return lg;
}

std::vector<double> accumulate_batch_gradient(const AgentModel& agent,
                                              std::span<const Trajectory> batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  std::vector<double> total(agent.parameter_count(), 0.0);
  double k_sum = 0.0;
  for (const auto& t : batch) {
    const auto g = weighted_trajectory_gradient(agent, t);
    for (std::size_t d = 0; d < total.size(); ++d) total[d] += g.gradient[d];
    k_sum += static_cast<double>(t.k());
  }
  for (auto& g : total) g /= k_sum;
  return total;
}

double weighted_mean_loss(const AgentModel& agent, std::span<const Trajectory> batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  double num = 0.0;
  double den = 0.0;
  for (const auto& t : batch) {
    num += weighted_trajectory_gradient(agent, t).loss;
    den += static_cast<double>(t.k());
  }
  return num / den;
}

EpochResult train_epoch(AgentModel& agent, std::span<const Trajectory> dataset,
                        const TrainingConfig& config, AdamOptimizer& optimizer) {
  if (dataset.empty()) throw InvalidArgument("train_epoch: empty dataset");
  if (config.batch_size == 0) throw InvalidArgument("batch size must be positive");
  for (const auto& t : dataset) t.validate();

  EpochResult result;
  double loss_sum = 0.0;
  double k_total = 0.0;
  std::vector<double> grad(agent.parameter_count(), 0.0);
  double k_batch = 0.0;
  std::size_t in_batch = 0;
  auto flush = [&] {
    for (auto& g : grad) g /= k_batch;
    auto params = agent.parameters();
    optimizer.step(params, grad);
    agent.set_parameters(params);
    ++result.steps;
    std::fill(grad.begin(), grad.end(), 0.0);
    k_batch = 0.0;
    in_batch = 0;
  };
  for (const auto& t : dataset) {
    const auto g = weighted_trajectory_gradient(agent, t);
    for (std::size_t d = 0; d < grad.size(); ++d) grad[d] += g.gradient[d];
    k_batch += static_cast<double>(t.k());
    loss_sum += g.loss;
    k_total += static_cast<double>(t.k());
    if (++in_batch == config.batch_size) flush();
  }
  if (in_batch > 0) flush();
  result.mean_loss = loss_sum / k_total;
  return result;
}

std::size_t agent_choice(const AgentModel& agent, const Trajectory& t) {
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t j = 0; j < t.candidates.size(); ++j) {
    const double s = agent.score(t.origin_text, t.candidates[j].text);
    if (j == 0 || s > best_score) {
      best = j;
      best_score = s;
    }
  }
  return best;
}

double imitation_accuracy(const AgentModel& agent, std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& t : trajectories) hits += agent_choice(agent, t) == t.expert_index ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trajectories.size());
}

}  // namespace maya
