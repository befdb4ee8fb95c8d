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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maya/core/types.hpp"

namespace maya {

enum class VictimMode { kScoreBased, kDecisionBased };

std::string_view to_string(VictimMode mode);
VictimMode parse_victim_mode(std::string_view s);

struct VictimCapability {
  VictimMode mode = VictimMode::kScoreBased;
  int label_count = 2;
  std::vector<std::string> label_names;

  static VictimCapability make(VictimMode mode, int label_count);
  void validate() const;
};

// A black-box text classifier. Implementations override do_predict; the public
// entry point checks preconditions and the one-verdict-per-text contract.
class Victim {
 public:
  virtual ~Victim() = default;

  virtual VictimCapability capability() const = 0;

  // Whether concurrent predict calls are allowed. When false, callers must
  // serialize access.
  virtual bool thread_safe() const { return true; }

  std::vector<VictimVerdict> predict(std::span<const std::string> texts,
                                     const std::optional<std::string>& context = std::nullopt);

  VictimVerdict predict_one(const std::string& text,
                            const std::optional<std::string>& context = std::nullopt);

 protected:
  virtual std::vector<VictimVerdict> do_predict(std::span<const std::string> texts,
                                                const std::optional<std::string>& context) = 0;
};

using VictimPtr = std::shared_ptr<Victim>;

}  // namespace maya
