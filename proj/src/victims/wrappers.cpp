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

#include "maya/victims/wrappers.hpp"

#include "maya/errors.hpp"

namespace maya {

DecisionOnlyVictim::DecisionOnlyVictim(VictimPtr inner) : inner_(std::move(inner)) {
  if (!inner_) throw InvalidArgument("DecisionOnlyVictim: null victim");
}

VictimCapability DecisionOnlyVictim::capability() const {
  auto cap = inner_->capability();
  cap.mode = VictimMode::kDecisionBased;
  return cap;
}

std::vector<VictimVerdict> DecisionOnlyVictim::do_predict(
    std::span<const std::string> texts, const std::optional<std::string>& context) {
  auto verdicts = inner_->predict(texts, context);
  std::vector<VictimVerdict> out;
  out.reserve(verdicts.size());
  for (const auto& v : verdicts) out.push_back(VictimVerdict::label_only(v.label()));
  return out;
}

LedgerVictim::LedgerVictim(VictimPtr inner, std::shared_ptr<QueryLedger> ledger,
                           std::string sample_id)
    : inner_(std::move(inner)), ledger_(std::move(ledger)), sample_id_(std::move(sample_id)) {
  if (!inner_ || !ledger_) throw InvalidArgument("LedgerVictim: null victim or ledger");
}

std::vector<VictimVerdict> LedgerVictim::do_predict(std::span<const std::string> texts,
                                                    const std::optional<std::string>& context) {
  auto verdicts = inner_->predict(texts, context);
  ledger_->record(sample_id_, texts.size());
  return verdicts;
}

VictimPtr wrap_with_ledger(VictimPtr victim, std::shared_ptr<QueryLedger> ledger,
                           std::string sample_id) {
  return std::make_shared<LedgerVictim>(std::move(victim), std::move(ledger),
                                        std::move(sample_id));
}

VictimPtr decision_only(VictimPtr victim) {
  return std::make_shared<DecisionOnlyVictim>(std::move(victim));
}

BudgetedVictim::BudgetedVictim(Victim& inner, std::size_t budget)
    : inner_(inner), budget_(budget) {}

std::vector<VictimVerdict> BudgetedVictim::do_predict(std::span<const std::string> texts,
                                                      const std::optional<std::string>& context) {
  if (budget_ != 0 && used_.load() + texts.size() > budget_) {
    throw BudgetExceeded("query budget of " + std::to_string(budget_) + " exhausted");
  }
  auto verdicts = inner_.predict(texts, context);
  used_ += texts.size();
  return verdicts;
}

}  // namespace maya
