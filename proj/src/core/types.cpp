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

#include "maya/core/types.hpp"

#include <cmath>
#include <numeric>

#include "maya/core/text.hpp"
#include "maya/errors.hpp"

namespace maya {

TextSample TextSample::make(std::string id, std::string text, LabelIndex gold_label,
                            int label_count, std::optional<std::string> context) {
  TextSample s;
  s.id = std::move(id);
  s.text = normalize_text(text);
  s.gold_label = gold_label;
  s.label_count = label_count;
  if (context) {
    s.context = normalize_text(*context);
    s.task_kind = TaskKind::kTextPair;
  }
  s.validate();
  return s;
}

void TextSample::validate() const {
  if (normalize_text(text).empty()) {
    throw InvalidArgument("sample '" + id + "': text is empty");
  }
  if (label_count <= 0) {
    throw InvalidArgument("sample '" + id + "': label_count must be positive");
  }
  if (gold_label < 0 || gold_label >= label_count) {
    throw InvalidArgument("sample '" + id + "': gold label out of range");
  }
  if (context.has_value() != (task_kind == TaskKind::kTextPair)) {
    throw InvalidArgument("sample '" + id +
                          "': context must be present iff the task is a text pair");
  }
}

TextSample TextSample::with_text(std::string new_text) const {
  TextSample s = *this;
  s.text = std::move(new_text);
  return s;
}

std::string_view to_string(CandidateOrigin origin) {
  return origin == CandidateOrigin::kParaphrase ? "paraphrase" : "mask";
}

CandidateOrigin parse_candidate_origin(std::string_view s) {
  if (s == "paraphrase") return CandidateOrigin::kParaphrase;
  if (s == "mask") return CandidateOrigin::kMask;
  throw InvalidArgument("unknown candidate origin: " + std::string(s));
}

Candidate Candidate::paraphrase(std::string text, ConstituentSpan span,
                                std::string paraphraser,
                                std::optional<double> similarity,
                                std::optional<int> grammar_errors) {
  Candidate c;
  c.text = normalize_text(text);
  c.origin = CandidateOrigin::kParaphrase;
  c.span = std::move(span);
  c.paraphraser = std::move(paraphraser);
  c.similarity = similarity;
  c.grammar_errors = grammar_errors;
  c.validate();
  return c;
}

Candidate Candidate::mask(std::string text, std::size_t position) {
  Candidate c;
  c.text = normalize_text(text);
  c.origin = CandidateOrigin::kMask;
  c.mask_position = position;
  c.validate();
  return c;
}

void Candidate::validate() const {
  const std::size_t masks = count_mask_tokens(text);
  if (origin == CandidateOrigin::kMask) {
    if (masks != 1 || !mask_position) {
      throw InvalidArgument("mask candidate needs exactly one mask token and a position: " +
                            text);
    }
  } else {
    if (masks != 0 || !span) {
      throw InvalidArgument("paraphrase candidate needs a span and no mask token: " + text);
    }
  }
  if (similarity && (*similarity < -1.0 || *similarity > 1.0)) {
    throw InvalidArgument("candidate similarity outside [-1, 1]");
  }
  if (grammar_errors && *grammar_errors < 0) {
    throw InvalidArgument("negative grammar error count");
  }
}

CandidateSet::CandidateSet(std::string source_text)
    : source_text_(normalize_text(source_text)) {}

bool CandidateSet::add(Candidate candidate) {
  std::string key = normalize_text(candidate.text);
  if (key.empty() || key == source_text_ || seen_.contains(key)) return false;
  candidate.text = key;
  seen_.insert(std::move(key));
  if (candidate.is_paraphrase()) {
    v_p_.push_back(std::move(candidate));
  } else {
    v_s_.push_back(std::move(candidate));
  }
  return true;
}

const Candidate& CandidateSet::at(std::size_t index) const {
  if (index < v_p_.size()) return v_p_[index];
  if (index >= size()) throw InvalidArgument("candidate index out of range");
  return v_s_[index - v_p_.size()];
}

std::vector<std::string> CandidateSet::texts() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const auto& c : v_p_) out.push_back(c.text);
  for (const auto& c : v_s_) out.push_back(c.text);
  return out;
}

std::size_t argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("argmax of empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t argmin_lowest(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("argmin of empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

VictimVerdict VictimVerdict::from_scores(std::vector<double> scores) {
  if (scores.empty()) throw InvalidArgument("verdict: empty score vector");
  double sum = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("verdict: score outside [0, 1]");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-4) {
    throw InvalidArgument("verdict: scores sum to " + std::to_string(sum));
  }
  VictimVerdict v;
  v.label_ = static_cast<LabelIndex>(argmax_lowest(scores));
  v.scores_ = std::move(scores);
  return v;
}

VictimVerdict VictimVerdict::label_only(LabelIndex label) {
  if (label < 0) throw InvalidArgument("verdict: negative label");
  VictimVerdict v;
  v.label_ = label;
  return v;
}

VictimVerdict VictimVerdict::sealed(const VictimVerdict& verdict) {
  VictimVerdict v = verdict;
  v.sealed_ = true;
  return v;
}

bool VictimVerdict::has_scores() const {
  if (sealed_) throw ScoresAccessViolation("verdict scores inspected on a label-only path");
  return scores_.has_value();
}

const std::vector<double>& VictimVerdict::scores() const {
  if (sealed_) throw ScoresAccessViolation("verdict scores read on a label-only path");
  if (!scores_) throw InvalidArgument("verdict carries no scores");
  return *scores_;
}

double VictimVerdict::score_of(LabelIndex label) const {
  const auto& s = scores();
  if (label < 0 || static_cast<std::size_t>(label) >= s.size()) {
    throw InvalidArgument("verdict: label index out of range");
  }
  return s[static_cast<std::size_t>(label)];
}

std::string_view to_string(AttackStatus status) {
  switch (status) {
    case AttackStatus::kSuccess: return "SUCCESS";
    case AttackStatus::kFailedBudget: return "FAILED_BUDGET";
    case AttackStatus::kFailedExhausted: return "FAILED_EXHAUSTED";
    case AttackStatus::kFailedCap: return "FAILED_CAP";
    case AttackStatus::kSkippedMisclassified: return "SKIPPED_MISCLASSIFIED";
  }
  return "UNKNOWN";
}

AttackStatus parse_attack_status(std::string_view s) {
  for (auto status : {AttackStatus::kSuccess, AttackStatus::kFailedBudget,
                      AttackStatus::kFailedExhausted, AttackStatus::kFailedCap,
                      AttackStatus::kSkippedMisclassified}) {
    if (to_string(status) == s) return status;
  }
  throw InvalidArgument("unknown attack status: " + std::string(s));
}

void AttackOutcome::validate() const {
  if (status == AttackStatus::kSuccess) {
    if (!adversarial_text || !label_after || *label_after == label_before) {
      throw InvalidArgument("outcome '" + sample_id +
                            "': success requires adversarial text and a flipped label");
    }
  }
}

}  // namespace maya
