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

#include <cstdlib>
#include <cstring>

#include "kernels_internal.h"

namespace delaymask::kernels {

const KernelTable& Scalar() { return internal::kScalarTable; }

const KernelTable* Avx2() {
#if defined(DELAYMASK_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &internal::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& Active() {
  static const KernelTable* table = [] {
    const char* force = std::getenv("DELAYMASK_KERNELS");
    if (force != nullptr && std::strcmp(force, "scalar") == 0) {
      return &Scalar();
    }
    const KernelTable* avx2 = Avx2();
    return avx2 != nullptr ? avx2 : &Scalar();
  }();
  return *table;
}

}  // namespace delaymask::kernels
