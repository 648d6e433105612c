// Copyright 2026 The delaymask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "delaymask/status.h"

#include <string>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"

namespace delaymask {

absl::Status ConfigError(absl::string_view kind, absl::string_view detail) {
  return absl::InvalidArgumentError(absl::StrCat(kind, ": ", detail));
}

absl::Status DataError(absl::string_view kind, absl::string_view detail) {
  return absl::FailedPreconditionError(absl::StrCat(kind, ": ", detail));
}

absl::Status InfeasibleError(absl::string_view kind, absl::string_view detail) {
  return absl::OutOfRangeError(absl::StrCat(kind, ": ", detail));
}

absl::Status UnsupportedError(absl::string_view kind, absl::string_view detail) {
  return absl::UnimplementedError(absl::StrCat(kind, ": ", detail));
}

bool HasErrorKind(const absl::Status& status, absl::string_view kind) {
  return !status.ok() &&
         absl::StartsWith(status.message(), absl::StrCat(kind, ":"));
}

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
      return 2;
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
      return 3;
    case absl::StatusCode::kOutOfRange:
      return 4;
    default:
      return 1;
  }
}

}  // namespace delaymask
