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
#include <map>
#include <mutex>
#include <string>

namespace maya {

// Victim query counts, total and per sample. Safe for concurrent increments.
class QueryLedger {
 public:
  void record(const std::string& sample_id, std::size_t count);

  std::size_t total() const;
  std::size_t count(const std::string& sample_id) const;
  std::map<std::string, std::size_t> per_sample() const;

 private:
  mutable std::mutex mu_;
  std::size_t total_ = 0;
  std::map<std::string, std::size_t> per_sample_;
};

}  // namespace maya
