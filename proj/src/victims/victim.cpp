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

#include "maya/victims/victim.hpp"

#include "maya/errors.hpp"

namespace maya {

std::string_view to_string(VictimMode mode) {
  return mode == VictimMode::kScoreBased ? "score" : "decision";
}

VictimMode parse_victim_mode(std::string_view s) {
  if (s == "score" || s == "SCORE_BASED") return VictimMode::kScoreBased;
  if (s == "decision" || s == "DECISION_BASED") return VictimMode::kDecisionBased;
  throw InvalidArgument("unknown victim mode: " + std::string(s));
}

VictimCapability VictimCapability::make(VictimMode mode, int label_count) {
  VictimCapability cap;
  cap.mode = mode;
  cap.label_count = label_count;
  for (int i = 0; i < label_count; ++i) cap.label_names.push_back(std::to_string(i));
  cap.validate();
  return cap;
}

void VictimCapability::validate() const {
  if (label_count <= 0) throw InvalidArgument("victim label_count must be positive");
  if (label_names.size() != static_cast<std::size_t>(label_count)) {
    throw InvalidArgument("victim label_names length must equal label_count");
  }
}

std::vector<VictimVerdict> Victim::predict(std::span<const std::string> texts,
                                           const std::optional<std::string>& context) {
  if (texts.empty()) throw InvalidArgument("predict: no texts");
  for (const auto& t : texts) {
    if (t.empty()) throw InvalidArgument("predict: empty text");
  }
  auto verdicts = do_predict(texts, context);
  if (verdicts.size() != texts.size()) {
    throw ProtocolViolation("predict: expected " + std::to_string(texts.size()) +
                            " verdicts, got " + std::to_string(verdicts.size()));
  }
  return verdicts;
}

VictimVerdict Victim::predict_one(const std::string& text,
                                  const std::optional<std::string>& context) {
  return predict(std::span<const std::string>(&text, 1), context).front();
}

}  // namespace maya
