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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maya/core/types.hpp"
#include "maya/generation/providers.hpp"

namespace maya {

inline constexpr std::string_view kPairSeparator = "[SEP]";

// Maps an (original, candidate) pair to a fixed-width feature vector.
class PairEncoder {
 public:
  virtual ~PairEncoder() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::vector<double> encode(std::string_view original,
                                     std::string_view candidate) const = 0;
};

struct PairTokens {
  std::vector<std::string> original;
  std::vector<std::string> candidate;
};

// Token sides of "original [SEP] candidate" within `max_tokens` (separator
// included). The original side is cut first so the candidate stays intact
// whenever it fits on its own.
PairTokens truncate_pair(std::string_view original, std::string_view candidate,
                         std::size_t max_tokens);

// Bag-of-tokens pair features over the truncated pair:
//   [0]  cosine similarity of the two sides' sentence embeddings
//   [1]  1 when the candidate holds a mask token
//   [2]  relative length change
//   [3, 3+B)     hashed buckets of tokens removed from the original
//   [3+B, 3+2B)  hashed buckets of tokens added by the candidate
class BagPairEncoder : public PairEncoder {
 public:
  explicit BagPairEncoder(std::shared_ptr<const SentenceEncoder> sentence_encoder,
                          std::size_t buckets = 64, std::size_t max_tokens = 256);

  std::string name() const override;
  std::size_t dim() const override { return 3 + 2 * buckets_; }
  std::vector<double> encode(std::string_view original, std::string_view candidate) const override;

 private:
  std::shared_ptr<const SentenceEncoder> sentence_encoder_;
  std::size_t buckets_;
  std::size_t max_tokens_;
};

// Pair encoder followed by a linear head with one output unit.
class AgentModel {
 public:
  AgentModel(std::shared_ptr<const PairEncoder> encoder, std::vector<double> weights, double bias,
             std::uint64_t seed = 0, int training_rounds = 0);

  // Head drawn from N(0, 0.01^2) with the given seed.
  static AgentModel initialize(std::shared_ptr<const PairEncoder> encoder, std::uint64_t seed);

  double score(std::string_view original, std::string_view candidate) const;
  double score_features(std::span<const double> features) const;
  std::vector<double> features(std::string_view original, std::string_view candidate) const;

  const PairEncoder& encoder() const { return *encoder_; }
  std::shared_ptr<const PairEncoder> encoder_ptr() const { return encoder_; }

  // Head weights followed by the bias.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> params);
  std::size_t parameter_count() const { return weights_.size() + 1; }

  std::uint64_t seed() const { return seed_; }
  int training_rounds() const { return training_rounds_; }
  void set_training_rounds(int rounds) { training_rounds_ = rounds; }

  // Writes manifest.json and parameters.json into `dir`.
  void save(const std::filesystem::path& dir) const;
  // Throws CheckpointError when the manifest names a different encoder or
  // the head shape does not match.
  static AgentModel load(const std::filesystem::path& dir,
                         std::shared_ptr<const PairEncoder> encoder);

 private:
  std::shared_ptr<const PairEncoder> encoder_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::uint64_t seed_ = 0;
  int training_rounds_ = 0;
};

// One scalar per candidate, in candidate order. No victim is involved.
std::vector<double> score_candidates(std::string_view original,
                                     std::span<const Candidate> candidates,
                                     const AgentModel& agent);
std::vector<double> score_candidates(const CandidateSet& candidates, const AgentModel& agent);

}  // namespace maya
