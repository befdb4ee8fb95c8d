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
#include <span>

#include <nlohmann/json.hpp>

#include "maya/harness/evaluation.hpp"

namespace maya {

inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kSamplesFile = "samples.jsonl";
inline constexpr const char* kEvaluationFile = "evaluation.json";

nlohmann::json report_header_json(const EvalReport& report);
nlohmann::json sample_record_json(const SampleRecord& record);
SampleRecord sample_record_from_json(const nlohmann::json& j);

// Writes report.json (header) and samples.jsonl (one record per sample, in
// dataset order) into `dir`, creating it if needed. Output is byte-stable.
void emit_report(const EvalReport& report, const std::filesystem::path& dir);
EvalReport load_report(const std::filesystem::path& dir);

// evaluation.json with the budget curve and transfer results.
void emit_evaluation(const std::filesystem::path& dir, const EvalReport& report,
                     std::span<const BudgetPoint> curve,
                     std::span<const TransferResult> transfers);

}  // namespace maya
