// Copyright 2026 The meskit Authors
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
#include <utility>

namespace meskit {

/// Base of the typed error taxonomy. `kind()` is a stable machine-readable
/// name (it ends up in the CLI's error JSON); `stage()` names the pipeline
/// stage that raised it, empty outside the decomposition pipeline.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what, std::string stage = {})
      : std::runtime_error(what), kind_(std::move(kind)), stage_(std::move(stage)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string kind_;
  std::string stage_;
};

#define MESKIT_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what, std::string stage = {})       \
        : Error(#Name, what, std::move(stage)) {}                        \
  }

MESKIT_DEFINE_ERROR(DimensionError);
MESKIT_DEFINE_ERROR(IndexError);
MESKIT_DEFINE_ERROR(NotHermitianError);
MESKIT_DEFINE_ERROR(ZeroOperatorError);
MESKIT_DEFINE_ERROR(NotMESError);
MESKIT_DEFINE_ERROR(NotUnitaryError);
MESKIT_DEFINE_ERROR(NotOrthogonalError);
MESKIT_DEFINE_ERROR(SubspaceViolationError);
MESKIT_DEFINE_ERROR(InconsistentChoiError);
MESKIT_DEFINE_ERROR(PhaseAlignmentError);
MESKIT_DEFINE_ERROR(NoSolutionError);
MESKIT_DEFINE_ERROR(AmbiguousSolutionError);
MESKIT_DEFINE_ERROR(NotPreserverError);
MESKIT_DEFINE_ERROR(NotInvertibleError);
MESKIT_DEFINE_ERROR(NotKroneckerError);
MESKIT_DEFINE_ERROR(ParseError);

#undef MESKIT_DEFINE_ERROR

}  // namespace meskit
