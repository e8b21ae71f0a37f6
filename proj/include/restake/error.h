// Copyright 2026 The Restake Authors
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

#ifndef RESTAKE_ERROR_H_
#define RESTAKE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace restake {

// Distinct causes of a malformed or inconsistent model.
enum class ModelErrc {
  kSchema,
  kBadNumber,
  kEmptyId,
  kDuplicateId,
  kUnknownId,
  kDanglingEdge,
  kDuplicateEdge,
  kNegativeStake,
  kNegativeProfit,
  kAlphaRange,
  kMagnitude,
};

std::string_view to_string(ModelErrc code);

// Input does not describe a well-formed restaking graph (or refers to
// vertices the graph does not have).
class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  ModelErrc code() const { return code_; }

 private:
  ModelErrc code_;
};

// An operation was called outside its domain (e.g. stability of an attack
// that is not valid, a construction parameter out of range).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive search refused because the instance exceeds the configured
// enumeration limits. Never replaced by an approximation.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace restake

#endif  // RESTAKE_ERROR_H_
