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

#include "maya/harness/report.hpp"

#include <fstream>

#include "maya/core/serialization.hpp"
#include "maya/errors.hpp"

namespace maya {

using nlohmann::json;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

json report_header_json(const EvalReport& r) {
  json j{{"attacker", r.attacker},
         {"label_count", r.label_count},
         {"total", r.total},
         {"skipped", r.skipped},
         {"successes", r.successes},
         {"asr", r.asr},
         {"avg_queries", optional_json(r.avg_queries)},
         {"avg_queries_all", r.avg_queries_all},
         {"grammar_increase_pct", r.grammar_increase_pct},
         {"query_mismatches", r.query_mismatches}};
  if (r.avg_ppl) j["avg_ppl"] = *r.avg_ppl;
  return j;
}

json sample_record_json(const SampleRecord& rec) {
  json j{{"id", rec.sample.id},
         {"text", rec.sample.text},
         {"context", optional_json(rec.sample.context)},
         {"label", rec.sample.gold_label},
         {"outcome", rec.outcome},
         {"ledger_queries", rec.ledger_queries}};
  if (rec.original_grammar_errors) j["original_grammar_errors"] = *rec.original_grammar_errors;
  if (rec.adversarial_grammar_errors) {
    j["adversarial_grammar_errors"] = *rec.adversarial_grammar_errors;
  }
  if (rec.perplexity) j["perplexity"] = *rec.perplexity;
  return j;
}

SampleRecord sample_record_from_json(const json& j) {
  SampleRecord rec;
  rec.sample.id = j.at("id").get<std::string>();
  rec.sample.text = j.at("text").get<std::string>();
  rec.sample.context = optional_from<std::string>(j, "context");
  if (rec.sample.context) rec.sample.task_kind = TaskKind::kTextPair;
  rec.sample.gold_label = j.at("label").get<LabelIndex>();
  rec.outcome = j.at("outcome").get<AttackOutcome>();
  rec.ledger_queries = j.at("ledger_queries").get<std::size_t>();
  rec.original_grammar_errors = optional_from<int>(j, "original_grammar_errors");
  rec.adversarial_grammar_errors = optional_from<int>(j, "adversarial_grammar_errors");
  rec.perplexity = optional_from<double>(j, "perplexity");
  return rec;
}

void emit_report(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / kReportFile, report_header_json(report).dump(2) + "\n");
  std::string lines;
  for (const auto& rec : report.per_sample) lines += sample_record_json(rec).dump() + "\n";
  write_file(dir / kSamplesFile, lines);
}

EvalReport load_report(const std::filesystem::path& dir) {
  std::ifstream header_in(dir / kReportFile);
  std::ifstream samples_in(dir / kSamplesFile);
  if (!header_in || !samples_in) throw Error("no report in " + dir.string());
  try {
    const auto h = json::parse(header_in);
    EvalReport r;
    r.attacker = h.at("attacker").get<std::string>();
    r.label_count = h.at("label_count").get<int>();
    r.total = h.at("total").get<std::size_t>();
    r.skipped = h.at("skipped").get<std::size_t>();
    r.successes = h.at("successes").get<std::size_t>();
    r.asr = h.at("asr").get<double>();
    r.avg_queries = optional_from<double>(h, "avg_queries");
    r.avg_queries_all = h.at("avg_queries_all").get<double>();
    r.avg_ppl = optional_from<double>(h, "avg_ppl");
    r.grammar_increase_pct = h.at("grammar_increase_pct").get<double>();
    r.query_mismatches = h.at("query_mismatches").get<std::size_t>();
    std::string line;
    while (std::getline(samples_in, line)) {
      if (line.empty()) continue;
      r.per_sample.push_back(sample_record_from_json(json::parse(line)));
      r.per_sample.back().sample.label_count = r.label_count;
    }
    if (r.per_sample.size() != r.total) throw ParseError("sample count does not match header");
    return r;
  } catch (const json::exception& e) {
    throw ParseError("malformed report in " + dir.string() + ": " + e.what());
  }
}

void emit_evaluation(const std::filesystem::path& dir, const EvalReport& report,
                     std::span<const BudgetPoint> curve,
                     std::span<const TransferResult> transfers) {
  std::filesystem::create_directories(dir);
  json j{{"report", report_header_json(report)},
         {"budget_curve", json::array()},
         {"transfer", json::array()}};
  for (const auto& p : curve) j["budget_curve"].push_back({{"budget", p.budget}, {"asr", p.asr}});
  for (const auto& t : transfers) {
    j["transfer"].push_back(
        {{"victim", t.victim}, {"samples", t.samples}, {"queries", t.queries}, {"asr", t.asr}});
  }
  write_file(dir / kEvaluationFile, j.dump(2) + "\n");
}

}  // namespace maya
