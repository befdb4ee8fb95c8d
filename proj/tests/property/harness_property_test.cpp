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

#include <gtest/gtest.h>

#include "gen.hpp"
#include "maya/harness/evaluation.hpp"

namespace maya {
namespace {

std::vector<SampleRecord> random_records(std::mt19937_64& rng) {
  const AttackStatus statuses[] = {AttackStatus::kSuccess, AttackStatus::kFailedBudget,
                                   AttackStatus::kFailedExhausted, AttackStatus::kFailedCap,
                                   AttackStatus::kSkippedMisclassified};
  std::uniform_int_distribution<int> st(0, 4);
  std::uniform_int_distribution<std::size_t> q(1, 60);
  std::uniform_int_distribution<std::size_t> n(0, 30);
  std::vector<SampleRecord> out(n(rng));
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& r = out[i];
    r.sample = TextSample::make("s" + std::to_string(i), "some text", 1, 2);
    r.outcome.sample_id = r.sample.id;
    r.outcome.status = statuses[st(rng)];
    r.outcome.queries = r.outcome.status == AttackStatus::kSkippedMisclassified ? 1 : q(rng);
    r.ledger_queries = r.outcome.queries;
  }
  return out;
}

TEST(HarnessProperty, AsrConsistency) {
  std::mt19937_64 rng(31);
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const auto records = random_records(rng);
    const auto r = summarize("maya", 2, records);
    std::size_t succ = 0, skip = 0, q_all = 0;
    for (const auto& rec : records) {
      succ += rec.outcome.success();
      skip += rec.outcome.status == AttackStatus::kSkippedMisclassified;
      if (rec.outcome.status != AttackStatus::kSkippedMisclassified) q_all += rec.outcome.queries;
    }
    EXPECT_EQ(r.successes, succ);
    EXPECT_EQ(r.skipped, skip);
    const auto eligible = records.size() - skip;
    EXPECT_NEAR(r.asr, eligible ? 100.0 * static_cast<double>(succ) / static_cast<double>(eligible) : 0.0, 1e-9);
    EXPECT_EQ(r.avg_queries.has_value(), succ > 0);
    EXPECT_NEAR(r.avg_queries_all, eligible ? static_cast<double>(q_all) / static_cast<double>(eligible) : 0.0, 1e-9);
    EXPECT_GE(r.asr, 0.0);
    EXPECT_LE(r.asr, 100.0);
  }
}

TEST(HarnessProperty, BudgetCurveIsMonotoneAndReachesAsr) {
  std::mt19937_64 rng(32);
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const auto records = random_records(rng);
    std::vector<AttackOutcome> outs;
    for (const auto& r : records) outs.push_back(r.outcome);
    std::vector<std::size_t> budgets = {0, 1, 5, 10, 20, 40, 60, 1000};
    const auto curve = asr_under_budget(outs, budgets);
    ASSERT_EQ(curve.size(), budgets.size());
    for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GE(curve[i].asr, curve[i - 1].asr);
    EXPECT_EQ(curve.front().asr, 0.0);
    EXPECT_NEAR(curve.back().asr, summarize("maya", 2, records).asr, 1e-9);
  }
}

}  // namespace
}  // namespace maya
