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

#include "maya/search/config.hpp"

#include "maya/errors.hpp"

namespace maya {

DatasetProfile parse_dataset_profile(std::string_view s) {
  if (s == "sst2" || s == "sst-2") return DatasetProfile::kSst2;
  if (s == "mnli") return DatasetProfile::kMnli;
  if (s == "agnews" || s == "ag_news" || s == "ag-news") return DatasetProfile::kAgNews;
  throw InvalidArgument("unknown dataset profile: " + std::string(s));
}

int default_round_cap(DatasetProfile profile) {
  switch (profile) {
    case DatasetProfile::kSst2: return 8;
    case DatasetProfile::kMnli: return 8;
    case DatasetProfile::kAgNews: return 12;
  }
  return 8;
}

AttackConfig AttackConfig::for_profile(DatasetProfile profile) {
  AttackConfig c;
  c.round_cap = default_round_cap(profile);
  return c;
}

void AttackConfig::validate() const {
  if (k == 0) throw InvalidArgument("attack config: k must be positive");
  if (round_cap <= 0) throw InvalidArgument("attack config: round_cap must be positive");
  if (query_budget == 0) throw InvalidArgument("attack config: query_budget must be positive");
  if (min_span_tokens == 0) throw InvalidArgument("attack config: min_span_tokens must be positive");
}

GenerationOptions AttackConfig::generation() const {
  return GenerationOptions{min_span_tokens, constituent_allowlist};
}

}  // namespace maya
