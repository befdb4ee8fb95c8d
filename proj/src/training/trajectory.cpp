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

#include "maya/training/trajectory.hpp"

#include <fstream>
#include <set>

#include "maya/core/serialization.hpp"
#include "maya/errors.hpp"

namespace maya {

void Trajectory::validate() const {
  if (candidates.size() < 2) throw InvalidArgument("trajectory needs at least two candidates");
  if (expert_index >= candidates.size()) throw InvalidArgument("expert_index out of range");
  std::set<std::string> seen;
  for (const auto& c : candidates) {
    if (!seen.insert(c.text).second) throw InvalidArgument("duplicate trajectory candidate");
  }
}

void to_json(nlohmann::json& j, const Trajectory& t) {
  j = nlohmann::json{{"origin", t.origin_text},
                     {"candidates", t.candidates},
                     {"expert_index", t.expert_index},
                     {"round", t.round}};
}

void from_json(const nlohmann::json& j, Trajectory& t) {
  t.origin_text = j.at("origin").get<std::string>();
  t.candidates = j.at("candidates").get<std::vector<Candidate>>();
  t.expert_index = j.at("expert_index").get<std::size_t>();
  t.round = j.value("round", 0);
  t.validate();
}

void append_jsonl(std::ostream& out, std::span<const Trajectory> trajectories) {
  for (const auto& t : trajectories) out << nlohmann::json(t).dump() << '\n';
  if (!out) throw Error("failed to write trajectory log");
}

std::vector<Trajectory> read_trajectory_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trajectory log " + path.string());
  std::vector<Trajectory> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<Trajectory>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace maya
