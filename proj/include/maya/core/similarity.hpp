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
#include <vector>

namespace maya {

using Embedding = std::vector<double>;

// u.v / (|u||v|), clamped to [-1, 1]. Throws DegenerateEmbedding on a zero
// vector and InvalidArgument on a dimension mismatch.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

}  // namespace maya
