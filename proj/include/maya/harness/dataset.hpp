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

#include <filesystem>
#include <span>
#include <vector>

#include "maya/core/types.hpp"

namespace maya {

// JSONL, one {id, text, context|null, label} object per line. Blank lines
// are ignored; malformed lines raise ParseError with the line number.
std::vector<TextSample> load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, std::span<const TextSample> samples);

// Largest gold label plus one, and at least 2.
int infer_label_count(std::span<const TextSample> samples);

}  // namespace maya
