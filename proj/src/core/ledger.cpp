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

#include "maya/core/ledger.hpp"

namespace maya {

void QueryLedger::record(const std::string& sample_id, std::size_t count) {
  std::lock_guard lock(mu_);
  per_sample_[sample_id] += count;
  total_ += count;
}

std::size_t QueryLedger::total() const {
  std::lock_guard lock(mu_);
  return total_;
}

std::size_t QueryLedger::count(const std::string& sample_id) const {
  std::lock_guard lock(mu_);
  auto it = per_sample_.find(sample_id);
  return it == per_sample_.end() ? 0 : it->second;
}

std::map<std::string, std::size_t> QueryLedger::per_sample() const {
  std::lock_guard lock(mu_);
  return per_sample_;
}

}  // namespace maya
