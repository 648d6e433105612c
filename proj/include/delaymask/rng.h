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

#ifndef DELAYMASK_RNG_H_
#define DELAYMASK_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace delaymask {

// Independent streams derived from one master seed.
enum class StreamId : uint64_t {
  kMechanism = 1,
  kQueue = 2,
  kSynthetic = 3,
  kMonteCarlo = 4,
};

// Seeded source of uniforms. Only the raw 64-bit engine output is used, so
// draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  // Stream `index` of kind `stream` under `master_seed`.
  static Rng ForStream(uint64_t master_seed, StreamId stream,
                       uint64_t index = 0);

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);

  void FillUniform(std::span<double> out);

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::span<T> values) {
    for (size_t i = values.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Seed from the DELAYMASK_SEED environment variable, else `fallback`.
uint64_t DefaultSeed(uint64_t fallback = 0);

}  // namespace delaymask

#endif  // DELAYMASK_RNG_H_
