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

#include <span>
#include <string>
#include <vector>

#include "maya/core/types.hpp"
#include "maya/generation/providers.hpp"
#include "maya/victims/victim.hpp"

namespace maya {

// Provider choices by name. "http:URL" selects the HTTP client for any slot.
//   parser:       lexicon
//   paraphrasers: synonym
//   masked_lm:    frequency (fit on the corpus)
//   encoder:      bag
//   grammar:      rules
//   antonyms:     dictionary | none
//   perplexity:   none
struct ProviderSettings {
  std::string parser = "lexicon";
  std::vector<std::string> paraphrasers = {"synonym"};
  std::string masked_lm = "frequency";
  std::string encoder = "bag";
  std::string grammar = "rules";
  std::string antonyms = "dictionary";
  std::string perplexity = "none";
};

ProviderSuite build_provider_suite(const ProviderSettings& settings,
                                   std::span<const TextSample> corpus);

// "local:CKPT" loads a reference classifier checkpoint; "http:URL" connects
// to a served victim. Decision mode hides scores of local victims.
VictimPtr open_victim(const std::string& spec, VictimMode mode, int label_count);

}  // namespace maya
