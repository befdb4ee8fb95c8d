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

#include "maya/harness/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "maya/agent/agent_attack.hpp"
#include "maya/errors.hpp"
#include "maya/search/maya_search.hpp"
#include "maya/victims/wrappers.hpp"

namespace maya {

AttackOutcome MayaAttacker::attack(const TextSample& sample, Victim& victim,
                                   const ProviderSuite& suite, const AttackConfig& config) const {
  return maya::attack(sample, victim, suite, config);
}

AgentAttacker::AgentAttacker(std::shared_ptr<const AgentModel> agent, VictimMode mode)
    : agent_(std::move(agent)), mode_(mode) {
  if (!agent_) throw InvalidArgument("AgentAttacker: null agent");
}

std::string AgentAttacker::name() const { return "agent-" + std::string(to_string(mode_)); }

AttackOutcome AgentAttacker::attack(const TextSample& sample, Victim& victim,
                                    const ProviderSuite& suite, const AttackConfig& config) const {
  if (mode_ == VictimMode::kScoreBased) {
    return agent_attack_score_based(sample, victim, *agent_, suite, config);
  }
  return agent_attack_decision_based(sample, victim, *agent_, suite, config);
}

double grammar_increase_pct(double adversarial_mean, double original_mean) {
  return (adversarial_mean - original_mean) / std::max(original_mean, kGrammarEpsilon) * 100.0;
}

EvalReport summarize(std::string attacker, int label_count, std::vector<SampleRecord> records) {
  EvalReport r;
  r.attacker = std::move(attacker);
  r.label_count = label_count;
  r.total = records.size();
  double q_success = 0.0;
  double q_all = 0.0;
  double ppl_sum = 0.0;
  std::size_t ppl_n = 0;
  double g_orig = 0.0;
  double g_adv = 0.0;
  std::size_t g_n = 0;
  for (const auto& rec : records) {
    const auto& o = rec.outcome;
    if (o.queries != rec.ledger_queries) ++r.query_mismatches;
    if (o.status == AttackStatus::kSkippedMisclassified) {
      ++r.skipped;
      continue;
    }
    q_all += static_cast<double>(o.queries);
    if (!o.success()) continue;
    ++r.successes;
    q_success += static_cast<double>(o.queries);
    if (rec.perplexity) {
      ppl_sum += *rec.perplexity;
      ++ppl_n;
    }
    if (rec.original_grammar_errors && rec.adversarial_grammar_errors) {
      g_orig += *rec.original_grammar_errors;
      g_adv += *rec.adversarial_grammar_errors;
      ++g_n;
    }
  }
  const std::size_t eligible = r.total - r.skipped;
  if (eligible > 0) {
    r.asr = 100.0 * static_cast<double>(r.successes) / static_cast<double>(eligible);
    r.avg_queries_all = q_all / static_cast<double>(eligible);
  }
  if (r.successes > 0) r.avg_queries = q_success / static_cast<double>(r.successes);
  if (ppl_n > 0) r.avg_ppl = ppl_sum / static_cast<double>(ppl_n);
  if (g_n > 0) {
    r.grammar_increase_pct =
        grammar_increase_pct(g_adv / static_cast<double>(g_n), g_orig / static_cast<double>(g_n));
  }
  r.per_sample = std::move(records);
  return r;
}

EvalReport evaluate(const Attacker& attacker, VictimPtr victim,
                    std::span<const TextSample> dataset, const ProviderSuite& suite,
                    const AttackConfig& config, const EvaluationOptions& options) {
  if (!victim) throw InvalidArgument("evaluate: null victim");
  if (dataset.empty()) throw InvalidArgument("evaluate: empty dataset");
  config.validate();
  auto ledger = options.ledger ? options.ledger : std::make_shared<QueryLedger>();
  std::size_t workers = std::max<std::size_t>(options.workers, 1);
  if (!victim->thread_safe()) workers = 1;
  workers = std::min(workers, dataset.size());
  const ProviderSuite shared = workers > 1 ? suite.serialized() : suite;

  std::vector<SampleRecord> records(dataset.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= dataset.size()) return;
      try {
        const auto& sample = dataset[i];
        const std::string key = sample.id + "#" + std::to_string(i);
        LedgerVictim counted(victim, ledger, key);
        const std::size_t before = ledger->count(key);
        SampleRecord rec;
        rec.sample = sample;
        rec.outcome = attacker.attack(sample, counted, shared, config);
        rec.ledger_queries = ledger->count(key) - before;
        if (rec.outcome.success() && rec.outcome.adversarial_text) {
          const auto& adv = *rec.outcome.adversarial_text;
          rec.original_grammar_errors = shared.grammar->count_errors(sample.text);
          rec.adversarial_grammar_errors = shared.grammar->count_errors(adv);
          if (shared.perplexity) rec.perplexity = shared.perplexity->perplexity(adv);
        }
        records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(dataset.size());
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(attacker.name(), victim->capability().label_count, std::move(records));
}

std::vector<BudgetPoint> asr_under_budget(std::span<const AttackOutcome> outcomes,
                                          std::span<const std::size_t> budgets) {
  std::size_t eligible = 0;
  std::vector<std::size_t> success_queries;
  for (const auto& o : outcomes) {
    if (o.status == AttackStatus::kSkippedMisclassified) continue;
    ++eligible;
    if (o.success()) success_queries.push_back(o.queries);
  }
  std::vector<BudgetPoint> curve;
  curve.reserve(budgets.size());
  for (auto b : budgets) {
    BudgetPoint p{b, 0.0};
    if (eligible > 0) {
      const auto hits = std::count_if(success_queries.begin(), success_queries.end(),
                                      [b](std::size_t q) { return q <= b; });
      p.asr = 100.0 * static_cast<double>(hits) / static_cast<double>(eligible);
    }
    curve.push_back(p);
  }
  return curve;
}

std::vector<TransferResult> transferability(
    std::span<const SampleRecord> records,
    std::span<const std::pair<std::string, VictimPtr>> victims) {
  std::vector<const SampleRecord*> adversarial;
  for (const auto& r : records) {
    if (r.outcome.success() && r.outcome.adversarial_text) adversarial.push_back(&r);
  }
  std::vector<TransferResult> out;
  for (const auto& [name, victim] : victims) {
    if (!victim) throw InvalidArgument("transferability: null victim '" + name + "'");
    TransferResult t;
    t.victim = name;
    t.samples = adversarial.size();
    std::size_t flipped = 0;
    for (const auto* r : adversarial) {
      const auto verdict = victim->predict_one(*r->outcome.adversarial_text, r->sample.context);
      ++t.queries;
      if (verdict.label() != r->sample.gold_label) ++flipped;
    }
    if (t.samples > 0) {
      t.asr = 100.0 * static_cast<double>(flipped) / static_cast<double>(t.samples);
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace maya
