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

#ifndef DELAYMASK_TOOLS_COMMANDS_H_
#define DELAYMASK_TOOLS_COMMANDS_H_

#include <ostream>

namespace delaymask::cli {

// Entry point for the delaymask binary. Returns the process exit code:
// 0 ok, 2 configuration error, 3 data error, 4 infeasible parameters.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace delaymask::cli

#endif  // DELAYMASK_TOOLS_COMMANDS_H_
