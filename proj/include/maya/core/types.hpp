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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace maya {

using LabelIndex = int;

enum class TaskKind { kSingleText, kTextPair };

// One classification instance. For pair tasks `context` holds the premise and
// stays fixed; only `text` is ever perturbed.
struct TextSample {
  std::string id;
  TaskKind task_kind = TaskKind::kSingleText;
  std::optional<std::string> context;
  std::string text;
  LabelIndex gold_label = 0;
  int label_count = 2;

  // Normalizes `text` and `context`, then checks the invariants.
  static TextSample make(std::string id, std::string text, LabelIndex gold_label,
                         int label_count,
                         std::optional<std::string> context = std::nullopt);

  void validate() const;

  // Same sample with a different attackable text.
  TextSample with_text(std::string new_text) const;
};

struct ConstituentSpan {
  std::size_t start_token = 0;
  std::size_t end_token = 0;  // exclusive
  std::string tag;

  std::size_t length() const { return end_token - start_token; }
  friend bool operator==(const ConstituentSpan&, const ConstituentSpan&) = default;
};

enum class CandidateOrigin { kParaphrase, kMask };

std::string_view to_string(CandidateOrigin origin);
CandidateOrigin parse_candidate_origin(std::string_view s);

struct Candidate {
  std::string text;
  CandidateOrigin origin = CandidateOrigin::kMask;
  std::optional<ConstituentSpan> span;
  std::optional<std::size_t> mask_position;
  std::optional<double> similarity;
  std::optional<int> grammar_errors;
  std::string paraphraser;

  static Candidate paraphrase(std::string text, ConstituentSpan span,
                              std::string paraphraser = {},
                              std::optional<double> similarity = std::nullopt,
                              std::optional<int> grammar_errors = std::nullopt);
  static Candidate mask(std::string text, std::size_t position);

  bool is_paraphrase() const { return origin == CandidateOrigin::kParaphrase; }
  void validate() const;
};

// V_p and V_s for one source sentence. Indexing over the union puts V_p first.
// Texts equal to the source, or to a text already present, are rejected.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::string source_text);

  // Returns false when the candidate was dropped as a duplicate.
  bool add(Candidate candidate);

  const std::string& source_text() const { return source_text_; }
  const std::vector<Candidate>& v_p() const { return v_p_; }
  const std::vector<Candidate>& v_s() const { return v_s_; }

  std::size_t size() const { return v_p_.size() + v_s_.size(); }
  bool empty() const { return size() == 0; }
  const Candidate& at(std::size_t index) const;
  bool in_v_p(std::size_t index) const { return index < v_p_.size(); }
  std::vector<std::string> texts() const;

 private:
  std::string source_text_;
  std::vector<Candidate> v_p_;
  std::vector<Candidate> v_s_;
  std::unordered_set<std::string> seen_;
};

// Index of the largest value; exact ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);
// Index of the smallest value; exact ties go to the lowest index.
std::size_t argmin_lowest(std::span<const double> values);

class VictimVerdict {
 public:
  // Label is the argmax of `scores`. Throws InvalidArgument when the vector is
  // not a probability distribution (entries in [0,1], sum within 1e-4 of 1).
  static VictimVerdict from_scores(std::vector<double> scores);
  static VictimVerdict label_only(LabelIndex label);
  // A verdict that still carries scores internally but raises
  // ScoresAccessViolation on any attempt to inspect them.
  static VictimVerdict sealed(const VictimVerdict& verdict);

  LabelIndex label() const { return label_; }
  bool has_scores() const;
  const std::vector<double>& scores() const;
  double score_of(LabelIndex label) const;

 private:
  LabelIndex label_ = 0;
  std::optional<std::vector<double>> scores_;
  bool sealed_ = false;
};

enum class AttackStatus {
  kSuccess,
  kFailedBudget,
  kFailedExhausted,
  kFailedCap,
  kSkippedMisclassified,
};

std::string_view to_string(AttackStatus status);
AttackStatus parse_attack_status(std::string_view s);

struct RoundRecord {
  int round = 0;
  std::string chosen_text;
  CandidateOrigin origin = CandidateOrigin::kParaphrase;
  std::optional<double> score_drop;
  std::size_t queries_so_far = 0;
};

struct AttackOutcome {
  std::string sample_id;
  AttackStatus status = AttackStatus::kFailedExhausted;
  std::optional<std::string> adversarial_text;
  int rounds = 0;
  std::size_t queries = 0;
  LabelIndex label_before = 0;
  std::optional<LabelIndex> label_after;
  std::vector<RoundRecord> trace;

  bool success() const { return status == AttackStatus::kSuccess; }
  void validate() const;
};

}  // namespace maya
