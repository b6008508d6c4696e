// Copyright 2026 The sysid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sysid/error.hpp"

namespace sysid {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid input";
    case ErrorCode::dimension: return "dimension mismatch";
    case ErrorCode::config: return "invalid configuration";
    case ErrorCode::numerical: return "numerical failure";
    case ErrorCode::size_cap: return "size cap exceeded";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::corrupt: return "corrupt data";
  }
  return "unknown error";
}

}  // namespace sysid
