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

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maya/core/types.hpp"

namespace maya {

// One imitation decision point: the sentence being perturbed, the candidates
// offered, and the candidate the expert chose.
struct Trajectory {
  std::string origin_text;
  std::vector<Candidate> candidates;
  std::size_t expert_index = 0;
  int round = 0;

  // Throws InvalidArgument unless there are >= 2 pairwise distinct
  // candidates and expert_index is in range.
  void validate() const;
  std::size_t k() const { return candidates.size(); }
};

void to_json(nlohmann::json& j, const Trajectory& t);
void from_json(const nlohmann::json& j, Trajectory& t);

void append_jsonl(std::ostream& out, std::span<const Trajectory> trajectories);
std::vector<Trajectory> read_trajectory_log(const std::filesystem::path& path);

}  // namespace maya
