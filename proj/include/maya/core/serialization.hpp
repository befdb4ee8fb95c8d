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

#include <nlohmann/json.hpp>

#include "maya/core/types.hpp"

namespace maya {

void to_json(nlohmann::json& j, const ConstituentSpan& span);
void from_json(const nlohmann::json& j, ConstituentSpan& span);

// {text, origin, span|mask_position}; similarity and grammar_errors when set.
void to_json(nlohmann::json& j, const Candidate& c);
void from_json(const nlohmann::json& j, Candidate& c);

void to_json(nlohmann::json& j, const RoundRecord& r);
void from_json(const nlohmann::json& j, RoundRecord& r);

void to_json(nlohmann::json& j, const AttackOutcome& o);
void from_json(const nlohmann::json& j, AttackOutcome& o);

}  // namespace maya
