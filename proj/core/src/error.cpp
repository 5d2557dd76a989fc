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

#include "vqemit/error.hpp"

namespace vqemit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::invalid_gate: return "invalid-gate";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::parse: return "parse";
    case ErrorKind::lookup: return "lookup";
    case ErrorKind::range: return "range";
    case ErrorKind::arity: return "arity";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::singular_response: return "singular-response";
    case ErrorKind::all_discarded: return "all-discarded";
    case ErrorKind::unstable_denominator: return "unstable-denominator";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config:
      return 2;
    case ErrorKind::singular_response:
    case ErrorKind::all_discarded:
    case ErrorKind::unstable_denominator:
    case ErrorKind::degenerate:
      return 4;
    default:
      return 3;
  }
}

}  // namespace vqemit
