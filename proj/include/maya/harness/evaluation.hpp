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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maya/agent/agent_model.hpp"
#include "maya/core/ledger.hpp"
#include "maya/core/types.hpp"
#include "maya/generation/providers.hpp"
#include "maya/search/config.hpp"
#include "maya/victims/victim.hpp"

namespace maya {

class Attacker {
 public:
  virtual ~Attacker() = default;
  virtual std::string name() const = 0;
  virtual AttackOutcome attack(const TextSample& sample, Victim& victim,
                               const ProviderSuite& suite, const AttackConfig& config) const = 0;
};

class MayaAttacker : public Attacker {
 public:
  std::string name() const override { return "maya"; }
  AttackOutcome attack(const TextSample& sample, Victim& victim, const ProviderSuite& suite,
                       const AttackConfig& config) const override;
};

// Score-based or decision-based agent procedure, per `mode`.
class AgentAttacker : public Attacker {
 public:
  AgentAttacker(std::shared_ptr<const AgentModel> agent, VictimMode mode);
  std::string name() const override;
  AttackOutcome attack(const TextSample& sample, Victim& victim, const ProviderSuite& suite,
                       const AttackConfig& config) const override;

 private:
  std::shared_ptr<const AgentModel> agent_;
  VictimMode mode_;
};

struct SampleRecord {
  TextSample sample;
  AttackOutcome outcome;
  // Queries the counting wrapper saw for this sample.
  std::size_t ledger_queries = 0;
  // Filled for successful attacks.
  std::optional<int> original_grammar_errors;
  std::optional<int> adversarial_grammar_errors;
  std::optional<double> perplexity;
};

struct EvalReport {
  std::string attacker;
  int label_count = 2;
  std::size_t total = 0;
  std::size_t skipped = 0;
  std::size_t successes = 0;
  double asr = 0.0;                         // percent of non-skipped samples
  std::optional<double> avg_queries;        // over successes
  double avg_queries_all = 0.0;             // over non-skipped samples
  std::optional<double> avg_ppl;            // only with a perplexity provider
  double grammar_increase_pct = 0.0;        // %I over successes
  std::size_t query_mismatches = 0;         // outcome.queries != ledger_queries
  std::vector<SampleRecord> per_sample;
};

inline constexpr double kGrammarEpsilon = 1e-9;

// (adv_mean - orig_mean) / max(orig_mean, eps) * 100.
double grammar_increase_pct(double adversarial_mean, double original_mean);

// Aggregates header fields from per-sample records.
EvalReport summarize(std::string attacker, int label_count, std::vector<SampleRecord> records);

struct EvaluationOptions {
  std::size_t workers = 1;
  // Receives one entry per sample; a private ledger is used when null.
  std::shared_ptr<QueryLedger> ledger;
};

// Attacks every sample through a counting wrapper. Samples run in a pool of
// `workers` threads when the victim allows concurrent calls.
EvalReport evaluate(const Attacker& attacker, VictimPtr victim,
                    std::span<const TextSample> dataset, const ProviderSuite& suite,
                    const AttackConfig& config, const EvaluationOptions& options = {});

struct BudgetPoint {
  std::size_t budget = 0;
  double asr = 0.0;
};

// ASR counting only successes within each budget, over non-skipped outcomes.
std::vector<BudgetPoint> asr_under_budget(std::span<const AttackOutcome> outcomes,
                                          std::span<const std::size_t> budgets);

struct TransferResult {
  std::string victim;
  std::size_t samples = 0;
  std::size_t queries = 0;
  double asr = 0.0;
};

// Per victim: share of successful adversarial texts whose label differs
// from the sample's gold label. One query per (sample, victim).
std::vector<TransferResult> transferability(
    std::span<const SampleRecord> records,
    std::span<const std::pair<std::string, VictimPtr>> victims);

}  // namespace maya
