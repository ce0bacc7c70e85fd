// Copyright 2026 The qaunwrap Authors
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

#include "qaunwrap/error.hpp"

namespace qaunwrap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::schema: return "schema";
    case ErrorKind::io: return "io";
    case ErrorKind::validation: return "validation";
  }
  return "unknown";
}

}  // namespace qaunwrap
