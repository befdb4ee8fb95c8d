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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "maya/generation/generate.hpp"

namespace maya {

inline constexpr std::size_t kDefaultSubstituteCount = 10;
inline constexpr std::size_t kDefaultQueryBudget = 15000;

// Round caps differ with typical sentence length of the dataset.
enum class DatasetProfile { kSst2, kMnli, kAgNews };

DatasetProfile parse_dataset_profile(std::string_view s);
int default_round_cap(DatasetProfile profile);

// Which confidence a drop is measured from. Selection is identical under both
// anchors; only the drops recorded in the trace differ.
enum class DropAnchor { kOriginal, kPreviousRound };

struct AttackConfig {
  std::size_t k = kDefaultSubstituteCount;
  int round_cap = 8;
  std::size_t query_budget = kDefaultQueryBudget;
  std::optional<std::set<std::string>> constituent_allowlist;
  std::size_t min_span_tokens = 1;
  DropAnchor drop_anchor = DropAnchor::kOriginal;

  static AttackConfig for_profile(DatasetProfile profile);
  void validate() const;
  GenerationOptions generation() const;
};

}  // namespace maya
