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

#include "maya/victims/linear_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "maya/core/text.hpp"
#include "maya/errors.hpp"

namespace maya {

namespace {

constexpr std::string_view kContextPrefix = "c|";

std::vector<std::string> feature_tokens(const std::string& text,
                                        const std::optional<std::string>& context) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(to_lower(t));
  if (context) {
    for (auto& t : tokenize(*context)) out.push_back(std::string(kContextPrefix) + to_lower(t));
  }
  return out;
}

void softmax_inplace(std::vector<double>& logits) {
  const double mx = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double& v : logits) {
    v = std::exp(v - mx);
    z += v;
  }
  for (double& v : logits) v /= z;
}

}  // namespace

ArchitectureSpec ArchitectureSpec::parse(std::string_view spec) {
  ArchitectureSpec out;
  std::string s(spec);
  auto colon = s.find(':');
  out.kind = s.substr(0, colon);
  if (out.kind.empty()) out.kind = "bow";
  if (out.kind != "bow") throw InvalidArgument("unknown architecture: " + out.kind);
  if (colon == std::string::npos) return out;
  std::stringstream rest(s.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("bad architecture option: " + item);
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "epochs") out.epochs = std::stoi(value);
      else if (key == "lr") out.learning_rate = std::stod(value);
      else if (key == "l2") out.l2 = std::stod(value);
      else if (key == "seed") out.seed = std::stoull(value);
      else throw InvalidArgument("unknown architecture option: " + key);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad value for architecture option " + key + ": " + value);
    }
  }
  if (out.epochs <= 0 || out.learning_rate <= 0.0 || out.l2 < 0.0) {
    throw InvalidArgument("architecture options must be positive");
  }
  return out;
}

std::string ArchitectureSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << kind << ":epochs=" << epochs << ",lr=" << learning_rate << ",l2=" << l2
     << ",seed=" << seed;
  return os.str();
}

LinearBowClassifier::LinearBowClassifier(int label_count, std::vector<std::string> vocabulary,
                                         std::vector<double> weights, ArchitectureSpec spec)
    : label_count_(label_count),
      vocabulary_(std::move(vocabulary)),
      weights_(std::move(weights)),
      spec_(std::move(spec)) {
  if (label_count_ < 2) throw InvalidArgument("classifier needs at least two labels");
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) vocab_.emplace(vocabulary_[i], i);
  if (weights_.size() != static_cast<std::size_t>(label_count_) * (vocabulary_.size() + 1)) {
    throw InvalidArgument("classifier weight matrix has the wrong shape");
  }
}

VictimCapability LinearBowClassifier::capability() const {
  return VictimCapability::make(VictimMode::kScoreBased, label_count_);
}

std::vector<std::size_t> LinearBowClassifier::active_features(
    const std::string& text, const std::optional<std::string>& context) const {
  std::set<std::size_t> active;
  for (const auto& tok : feature_tokens(text, context)) {
    auto it = vocab_.find(tok);
    if (it != vocab_.end()) active.insert(it->second);
  }
  return {active.begin(), active.end()};
}

std::vector<double> LinearBowClassifier::probabilities(
    const std::string& text, const std::optional<std::string>& context) const {
  const std::size_t width = vocabulary_.size() + 1;
  const auto active = active_features(text, context);
  std::vector<double> logits(static_cast<std::size_t>(label_count_));
  for (std::size_t c = 0; c < logits.size(); ++c) {
    const double* row = &weights_[c * width];
    double z = row[width - 1];
    for (auto f : active) z += row[f];
    logits[c] = z;
  }
  softmax_inplace(logits);
  return logits;
}

std::vector<VictimVerdict> LinearBowClassifier::do_predict(
    std::span<const std::string> texts, const std::optional<std::string>& context) {
  std::vector<VictimVerdict> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(VictimVerdict::from_scores(probabilities(t, context)));
  return out;
}

void LinearBowClassifier::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["format"] = "maya-bow-classifier/1";
  j["label_count"] = label_count_;
  j["architecture"] = spec_.to_string();
  j["vocabulary"] = vocabulary_;
  j["weights"] = weights_;
  std::ofstream os(path);
  if (!os) throw CheckpointError("cannot write classifier checkpoint: " + path.string());
  os << j.dump() << '\n';
}

std::shared_ptr<LinearBowClassifier> LinearBowClassifier::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw CheckpointError("cannot read classifier checkpoint: " + path.string());
  try {
    auto j = nlohmann::json::parse(is);
    if (j.at("format") != "maya-bow-classifier/1") {
      throw CheckpointError("unsupported classifier checkpoint format");
    }
    return std::make_shared<LinearBowClassifier>(
        j.at("label_count").get<int>(), j.at("vocabulary").get<std::vector<std::string>>(),
        j.at("weights").get<std::vector<double>>(),
        ArchitectureSpec::parse(j.at("architecture").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed classifier checkpoint: ") + e.what());
  }
}

std::shared_ptr<LinearBowClassifier> train_local_victim(std::span<const TextSample> train_data,
                                                        const ArchitectureSpec& spec) {
  if (train_data.empty()) throw DegenerateDataset("no training data");
  int label_count = 0;
  std::set<LabelIndex> labels;
  for (const auto& s : train_data) {
    s.validate();
    labels.insert(s.gold_label);
    label_count = std::max(label_count, s.label_count);
  }
  if (labels.size() < 2) throw DegenerateDataset("training data covers a single class");

  // Sorted vocabulary keeps feature indices independent of data order.
  std::set<std::string> vocab_set;
  for (const auto& s : train_data) {
    for (auto& tok : feature_tokens(s.text, s.context)) vocab_set.insert(std::move(tok));
  }
  std::vector<std::string> vocabulary(vocab_set.begin(), vocab_set.end());
  const std::size_t width = vocabulary.size() + 1;
  auto model = std::make_shared<LinearBowClassifier>(
      label_count, vocabulary,
      std::vector<double>(static_cast<std::size_t>(label_count) * width, 0.0), spec);

  std::vector<std::vector<std::size_t>> features;
  features.reserve(train_data.size());
  for (const auto& s : train_data) features.push_back(model->active_features(s.text, s.context));

  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> order(train_data.size());
  std::iota(order.begin(), order.end(), 0);
  auto& w = model->weights_;
  std::vector<double> logits(static_cast<std::size_t>(label_count));
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    const double lr = spec.learning_rate / (1.0 + 0.05 * epoch);
    for (std::size_t idx : order) {
      const auto& active = features[idx];
      for (std::size_t c = 0; c < logits.size(); ++c) {
        double z = w[c * width + width - 1];
        for (auto f : active) z += w[c * width + f];
        logits[c] = z;
      }
      softmax_inplace(logits);
      for (std::size_t c = 0; c < logits.size(); ++c) {
        const double target = static_cast<LabelIndex>(c) == train_data[idx].gold_label ? 1.0 : 0.0;
        const double g = logits[c] - target;
        double* row = &w[c * width];
        for (auto f : active) row[f] -= lr * (g + spec.l2 * row[f]);
        row[width - 1] -= lr * g;
      }
    }
  }
  return model;
}

}  // namespace maya
