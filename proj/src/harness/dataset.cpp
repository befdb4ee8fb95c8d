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

#include "maya/harness/dataset.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "maya/errors.hpp"

namespace maya {

using nlohmann::json;

std::vector<TextSample> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset " + path.string());
  struct Raw {
    std::string where, id, text;
    std::optional<std::string> context;
    LabelIndex label;
  };
  std::vector<Raw> raw;
  int label_count = 2;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Raw r;
    r.where = path.string() + ":" + std::to_string(lineno);
    try {
      const auto j = json::parse(line);
      r.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
      r.text = j.at("text").get<std::string>();
      if (j.contains("context") && !j.at("context").is_null()) {
        r.context = j.at("context").get<std::string>();
      }
      r.label = j.at("label").get<LabelIndex>();
    } catch (const json::exception& e) {
      throw ParseError(r.where + ": " + e.what());
    }
    label_count = std::max(label_count, r.label + 1);
    raw.push_back(std::move(r));
  }
  std::vector<TextSample> out;
  out.reserve(raw.size());
  for (auto& r : raw) {
    try {
      out.push_back(TextSample::make(std::move(r.id), std::move(r.text), r.label, label_count,
                                     std::move(r.context)));
    } catch (const InvalidArgument& e) {
      throw ParseError(r.where + ": " + e.what());
    }
  }
  return out;
}

void save_dataset(const std::filesystem::path& path, std::span<const TextSample> samples) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write dataset " + path.string());
  for (const auto& s : samples) {
    json j{{"id", s.id}, {"text", s.text}, {"context", nullptr}, {"label", s.gold_label}};
    if (s.context) j["context"] = *s.context;
    out << j.dump() << '\n';
  }
  if (!out) throw Error("failed writing dataset " + path.string());
}

int infer_label_count(std::span<const TextSample> samples) {
  int mx = 1;
  for (const auto& s : samples) mx = std::max(mx, s.gold_label + 1);
  return mx;
}

}  // namespace maya
