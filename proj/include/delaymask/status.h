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

#ifndef DELAYMASK_STATUS_H_
#define DELAYMASK_STATUS_H_

#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace delaymask {

// Every error message starts with its kind, e.g. "EtaOutOfRange: ...".
// The status code carries the class used for CLI exit codes.

// Bad configuration values (exit code 2).
absl::Status ConfigError(absl::string_view kind, absl::string_view detail);
// Bad or insufficient input data (exit code 3).
absl::Status DataError(absl::string_view kind, absl::string_view detail);
// Parameters that admit no valid mechanism (exit code 4).
absl::Status InfeasibleError(absl::string_view kind, absl::string_view detail);
// A distribution the verifier cannot handle.
absl::Status UnsupportedError(absl::string_view kind, absl::string_view detail);

// True if `status` carries the given kind prefix.
bool HasErrorKind(const absl::Status& status, absl::string_view kind);

// 0 for OK, 2 config, 3 data, 4 infeasible, 1 otherwise.
int ExitCodeFor(const absl::Status& status);

}  // namespace delaymask

#define DELAYMASK_STATUS_CONCAT_INNER_(a, b) a##b
#define DELAYMASK_STATUS_CONCAT_(a, b) DELAYMASK_STATUS_CONCAT_INNER_(a, b)

#define DELAYMASK_RETURN_IF_ERROR(expr)          \
  do {                                           \
    ::absl::Status delaymask_status_ = (expr);   \
    if (!delaymask_status_.ok()) {               \
      return delaymask_status_;                  \
    }                                            \
  } while (false)

#define DELAYMASK_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                     \
  if (!tmp.ok()) {                                       \
    return tmp.status();                                 \
  }                                                      \
  lhs = std::move(tmp).value()

#define DELAYMASK_ASSIGN_OR_RETURN(lhs, expr)                                  \
  DELAYMASK_ASSIGN_OR_RETURN_IMPL_(                                            \
      DELAYMASK_STATUS_CONCAT_(delaymask_statusor_, __LINE__), lhs, expr)

#endif  // DELAYMASK_STATUS_H_
