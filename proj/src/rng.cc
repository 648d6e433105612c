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

#include "delaymask/rng.h"

#include <cstdlib>
#include <string>

namespace delaymask {
namespace {

std::mt19937_64 SeededEngine(uint64_t seed, uint64_t stream, uint64_t index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream), static_cast<uint32_t>(index),
                    static_cast<uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(uint64_t seed) : engine_(SeededEngine(seed, 0, 0)) {}

Rng Rng::ForStream(uint64_t master_seed, StreamId stream, uint64_t index) {
  Rng rng(0);
  rng.engine_ =
      SeededEngine(master_seed, static_cast<uint64_t>(stream), index);
  return rng;
}

uint64_t Rng::Below(uint64_t n) {
  // Reject the incomplete top block so every residue is equally likely.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

void Rng::FillUniform(std::span<double> out) {
  for (double& v : out) v = Uniform();
}

uint64_t DefaultSeed(uint64_t fallback) {
  const char* env = std::getenv("DELAYMASK_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') return fallback;
  return static_cast<uint64_t>(v);
}

}  // namespace delaymask
