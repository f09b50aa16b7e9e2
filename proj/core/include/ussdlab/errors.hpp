// Copyright 2026 The ussdlab Authors
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

namespace ussdlab {

/// Base class for every error raised by the library. `kind()` is a stable
/// identifier used by the command-line tool when reporting failures.
class Error : public std::runtime_error {
  public:
    Error(const char* kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    const char* kind() const noexcept { return kind_; }

  private:
    const char* kind_;
};

#define USSDLAB_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                             \
      public:                                                               \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

USSDLAB_DEFINE_ERROR(RegisterClash);
USSDLAB_DEFINE_ERROR(UnknownQubit);
USSDLAB_DEFINE_ERROR(ShapeError);
USSDLAB_DEFINE_ERROR(BasisError);
USSDLAB_DEFINE_ERROR(NotIsometric);
USSDLAB_DEFINE_ERROR(PartitionError);
USSDLAB_DEFINE_ERROR(InvalidState);
USSDLAB_DEFINE_ERROR(DegenerateOverlap);
USSDLAB_DEFINE_ERROR(EmbeddingError);
USSDLAB_DEFINE_ERROR(UndefinedPhase);
USSDLAB_DEFINE_ERROR(RangeError);
USSDLAB_DEFINE_ERROR(NumericalError);

#undef USSDLAB_DEFINE_ERROR

}  // namespace ussdlab
