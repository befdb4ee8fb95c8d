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

#include <atomic>
#include <memory>
#include <string>

#include "maya/core/ledger.hpp"
#include "maya/victims/victim.hpp"

namespace maya {

// Exposes only hard labels of the wrapped victim.
class DecisionOnlyVictim : public Victim {
 public:
  explicit DecisionOnlyVictim(VictimPtr inner);

  VictimCapability capability() const override;
  bool thread_safe() const override { return inner_->thread_safe(); }

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  VictimPtr inner_;
};

// Attributes one query per predicted text to `sample_id` in the ledger.
class LedgerVictim : public Victim {
 public:
  LedgerVictim(VictimPtr inner, std::shared_ptr<QueryLedger> ledger, std::string sample_id);

  VictimCapability capability() const override { return inner_->capability(); }
  bool thread_safe() const override { return inner_->thread_safe(); }

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  VictimPtr inner_;
  std::shared_ptr<QueryLedger> ledger_;
  std::string sample_id_;
};

VictimPtr wrap_with_ledger(VictimPtr victim, std::shared_ptr<QueryLedger> ledger,
                           std::string sample_id);

VictimPtr decision_only(VictimPtr victim);

// Counts queries and refuses any batch that would push the count past
// `budget` (BudgetExceeded). A budget of 0 means unlimited.
class BudgetedVictim : public Victim {
 public:
  // Non-owning: `inner` must outlive the wrapper.
  BudgetedVictim(Victim& inner, std::size_t budget);

  VictimCapability capability() const override { return inner_.capability(); }
  bool thread_safe() const override { return inner_.thread_safe(); }

  std::size_t used() const { return used_.load(); }
  std::size_t budget() const { return budget_; }

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  Victim& inner_;
  std::size_t budget_;
  std::atomic<std::size_t> used_{0};
};

}  // namespace maya
