// Copyright 2026 The vqemit Authors
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

namespace vqemit {

enum class ErrorKind {
  capacity,
  invalid_gate,
  parameter,
  normalization,
  parse,
  lookup,
  range,
  arity,
  dimension,
  singular_response,
  all_discarded,
  unstable_denominator,
  degenerate,
  config,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so front ends can map
/// it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Exit status convention of the CLI: 2 config, 3 data, 4 numerical guard.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace vqemit
