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

#include "maya/agent/agent_model.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>

#include <nlohmann/json.hpp>

#include "maya/core/similarity.hpp"
#include "maya/core/text.hpp"
#include "maya/errors.hpp"
#include "maya/generation/reference_providers.hpp"

namespace maya {

using nlohmann::json;

PairTokens truncate_pair(std::string_view original, std::string_view candidate,
                         std::size_t max_tokens) {
  PairTokens out{tokenize(original), tokenize(candidate)};
  const std::size_t budget = max_tokens > 0 ? max_tokens - 1 : 0;  // room for [SEP]
  if (out.original.size() + out.candidate.size() <= budget) return out;
  if (out.candidate.size() >= budget) {
    out.original.clear();
    out.candidate.resize(budget);
  } else {
    out.original.resize(budget - out.candidate.size());
  }
  return out;
}

BagPairEncoder::BagPairEncoder(std::shared_ptr<const SentenceEncoder> sentence_encoder,
                               std::size_t buckets, std::size_t max_tokens)
    : sentence_encoder_(std::move(sentence_encoder)), buckets_(buckets), max_tokens_(max_tokens) {
  if (!sentence_encoder_) throw InvalidArgument("BagPairEncoder: null sentence encoder");
  if (buckets_ == 0 || max_tokens_ < 3) throw InvalidArgument("BagPairEncoder: bad shape");
}

std::string BagPairEncoder::name() const {
  return "bag-pair/" + sentence_encoder_->name() + "/" + std::to_string(buckets_) + "/" +
         std::to_string(max_tokens_);
}

std::vector<double> BagPairEncoder::encode(std::string_view original,
                                           std::string_view candidate) const {
  const auto pair = truncate_pair(original, candidate, max_tokens_);
  std::vector<double> f(dim(), 0.0);
  try {
    f[0] = cosine_similarity(sentence_encoder_->encode(detokenize(pair.original)),
                             sentence_encoder_->encode(detokenize(pair.candidate)));
  } catch (const DegenerateEmbedding&) {
    f[0] = 0.0;
  }
  const std::string mask(kMaskToken);
  f[1] = std::find(pair.candidate.begin(), pair.candidate.end(), mask) != pair.candidate.end()
             ? 1.0
             : 0.0;
  const double base = static_cast<double>(std::max<std::size_t>(pair.original.size(), 1));
  f[2] = (static_cast<double>(pair.candidate.size()) - static_cast<double>(pair.original.size())) /
         base;
  std::map<std::string, int> balance;
  for (const auto& t : pair.original) balance[to_lower(t)] += 1;
  for (const auto& t : pair.candidate) balance[to_lower(t)] -= 1;
  for (const auto& [tok, n] : balance) {
    if (n == 0) continue;
    const std::size_t bucket = stable_hash(tok) % buckets_;
    if (n > 0) {
      f[3 + bucket] += n;
    } else {
      f[3 + buckets_ + bucket] += -n;
    }
  }
  return f;
}

AgentModel::AgentModel(std::shared_ptr<const PairEncoder> encoder, std::vector<double> weights,
                       double bias, std::uint64_t seed, int training_rounds)
    : encoder_(std::move(encoder)),
      weights_(std::move(weights)),
      bias_(bias),
      seed_(seed),
      training_rounds_(training_rounds) {
  if (!encoder_) throw InvalidArgument("AgentModel: null encoder");
  if (weights_.size() != encoder_->dim()) {
    throw InvalidArgument("AgentModel: head width does not match encoder dimension");
  }
}

AgentModel AgentModel::initialize(std::shared_ptr<const PairEncoder> encoder, std::uint64_t seed) {
  if (!encoder) throw InvalidArgument("AgentModel: null encoder");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 0.01);
  std::vector<double> w(encoder->dim());
  for (auto& x : w) x = dist(rng);
  return AgentModel(std::move(encoder), std::move(w), 0.0, seed, 0);
}

std::vector<double> AgentModel::features(std::string_view original,
                                         std::string_view candidate) const {
  try {
    auto f = encoder_->encode(original, candidate);
    if (f.size() != weights_.size()) throw ScoringError("pair encoder returned the wrong width");
    return f;
  } catch (const ScoringError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScoringError(std::string("pair encoder failed: ") + e.what());
  }
}

double AgentModel::score_features(std::span<const double> features) const {
  double s = bias_;
  for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * features[i];
  return s;
}

double AgentModel::score(std::string_view original, std::string_view candidate) const {
  return score_features(features(original, candidate));
}

std::vector<double> AgentModel::parameters() const {
  std::vector<double> p = weights_;
  p.push_back(bias_);
  return p;
}

void AgentModel::set_parameters(std::span<const double> params) {
  if (params.size() != parameter_count()) throw InvalidArgument("parameter vector size mismatch");
  std::copy(params.begin(), params.end() - 1, weights_.begin());
  bias_ = params.back();
}

void AgentModel::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  json manifest{{"format", "maya-agent/1"},
                {"encoder", encoder_->name()},
                {"head_shape", {1, weights_.size()}},
                {"training_rounds", training_rounds_},
                {"seed", seed_}};
  json params{{"weights", weights_}, {"bias", bias_}};
  std::ofstream m(dir / "manifest.json");
  std::ofstream p(dir / "parameters.json");
  if (!m || !p) throw CheckpointError("cannot write agent checkpoint in " + dir.string());
  m << manifest.dump(2) << '\n';
  p << params.dump() << '\n';
}

AgentModel AgentModel::load(const std::filesystem::path& dir,
                            std::shared_ptr<const PairEncoder> encoder) {
  if (!encoder) throw InvalidArgument("AgentModel::load: null encoder");
  std::ifstream m(dir / "manifest.json");
  std::ifstream p(dir / "parameters.json");
  if (!m || !p) throw CheckpointError("incomplete agent checkpoint in " + dir.string());
  try {
    const auto manifest = json::parse(m);
    const auto params = json::parse(p);
    if (manifest.at("format") != "maya-agent/1") throw CheckpointError("unknown agent format");
    const auto name = manifest.at("encoder").get<std::string>();
    if (name != encoder->name()) {
      throw CheckpointError("checkpoint encoder '" + name + "' does not match '" +
                            encoder->name() + "'");
    }
    const auto shape = manifest.at("head_shape").get<std::vector<std::size_t>>();
    auto weights = params.at("weights").get<std::vector<double>>();
    if (shape.size() != 2 || shape[0] != 1 || shape[1] != encoder->dim() ||
        weights.size() != encoder->dim()) {
      throw CheckpointError("checkpoint head shape does not match the encoder");
    }
    return AgentModel(std::move(encoder), std::move(weights), params.at("bias").get<double>(),
                      manifest.at("seed").get<std::uint64_t>(),
                      manifest.at("training_rounds").get<int>());
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed agent checkpoint: ") + e.what());
  }
}

std::vector<double> score_candidates(std::string_view original,
                                     std::span<const Candidate> candidates,
                                     const AgentModel& agent) {
  if (candidates.empty()) throw InvalidArgument("score_candidates: no candidates");
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(agent.score(original, c.text));
  return out;
}

std::vector<double> score_candidates(const CandidateSet& candidates, const AgentModel& agent) {
  if (candidates.empty()) throw InvalidArgument("score_candidates: no candidates");
  std::vector<double> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.push_back(agent.score(candidates.source_text(), candidates.at(i).text));
  }
  return out;
}

}  // namespace maya
