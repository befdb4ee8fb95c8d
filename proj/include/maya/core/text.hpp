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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maya {

// Reserved placeholder token used by the mask path.
inline constexpr std::string_view kMaskToken = "[MASK]";

// Collapses whitespace runs to one space and trims both ends. Case and
// punctuation are preserved. Idempotent.
std::string normalize_text(std::string_view raw);

// Whitespace tokenization over normalized text. Every token coordinate in the
// library (spans, mask positions) refers to this tokenization.
std::vector<std::string> tokenize(std::string_view text);

std::string detokenize(std::span<const std::string> tokens);

// Replaces tokens [start, end) with `replacement` (which may be empty or
// multi-token) and returns the normalized result.
std::string splice_tokens(std::span<const std::string> tokens, std::size_t start,
                          std::size_t end, std::string_view replacement);

std::size_t count_mask_tokens(std::string_view text);

std::string to_lower(std::string_view s);

}  // namespace maya
