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
#include <unordered_map>
#include <vector>

#include "maya/core/types.hpp"
#include "maya/victims/victim.hpp"

namespace maya {

// Hyperparameters of the reference classifier. Parsed from strings such as
// "bow:epochs=100,lr=0.5,l2=0.0001,seed=3".
struct ArchitectureSpec {
  std::string kind = "bow";
  int epochs = 60;
  double learning_rate = 0.5;
  double l2 = 1e-4;
  std::uint64_t seed = 0;

  static ArchitectureSpec parse(std::string_view spec);
  std::string to_string() const;
};

// Linear softmax classifier over binary bag-of-token features. Context tokens
// (pair tasks) live in a separate feature namespace from text tokens.
class LinearBowClassifier : public Victim {
 public:
  LinearBowClassifier(int label_count, std::vector<std::string> vocabulary,
                      std::vector<double> weights, ArchitectureSpec spec);

  VictimCapability capability() const override;

  std::vector<double> probabilities(const std::string& text,
                                    const std::optional<std::string>& context) const;

  int label_count() const { return label_count_; }
  std::size_t vocabulary_size() const { return vocab_.size(); }
  const ArchitectureSpec& spec() const { return spec_; }

  void save(const std::filesystem::path& path) const;
  static std::shared_ptr<LinearBowClassifier> load(const std::filesystem::path& path);

  // Feature indices active for an input; exposed for training.
  std::vector<std::size_t> active_features(const std::string& text,
                                           const std::optional<std::string>& context) const;

 protected:
  std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                        const std::optional<std::string>& context) override;

 private:
  friend std::shared_ptr<LinearBowClassifier> train_local_victim(
      std::span<const TextSample>, const ArchitectureSpec&);

  int label_count_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> vocab_;
  // Row-major [label][feature], last column is the bias.
  std::vector<double> weights_;
  ArchitectureSpec spec_;
};

// Trains the reference classifier on gold labels with seeded SGD. Throws
// DegenerateDataset on empty data or data covering a single class.
std::shared_ptr<LinearBowClassifier> train_local_victim(std::span<const TextSample> train_data,
                                                        const ArchitectureSpec& spec);

}  // namespace maya
