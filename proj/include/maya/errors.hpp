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

#include <stdexcept>
#include <string>

namespace maya {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MAYA_DEFINE_ERROR(Name)        \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

MAYA_DEFINE_ERROR(InvalidArgument);
MAYA_DEFINE_ERROR(DegenerateEmbedding);
MAYA_DEFINE_ERROR(DegenerateDataset);
MAYA_DEFINE_ERROR(VictimUnavailable);
MAYA_DEFINE_ERROR(ProtocolViolation);
MAYA_DEFINE_ERROR(ParseError);
MAYA_DEFINE_ERROR(ParaphraseError);
MAYA_DEFINE_ERROR(SubstituteError);
MAYA_DEFINE_ERROR(ScoringError);
MAYA_DEFINE_ERROR(NoCandidates);
MAYA_DEFINE_ERROR(ProbeEmpty);
MAYA_DEFINE_ERROR(Exhausted);
MAYA_DEFINE_ERROR(BudgetExceeded);
MAYA_DEFINE_ERROR(CheckpointError);
MAYA_DEFINE_ERROR(ProviderError);
// Raised when label-only code paths touch a verdict's probability vector.
MAYA_DEFINE_ERROR(ScoresAccessViolation);

#undef MAYA_DEFINE_ERROR

}  // namespace maya
