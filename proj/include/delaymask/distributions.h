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

#ifndef DELAYMASK_DISTRIBUTIONS_H_
#define DELAYMASK_DISTRIBUTIONS_H_

#include <memory>
#include <optional>
#include <span>
#include "absl/strings/string_view.h"
#include <variant>

#include "absl/status/statusor.h"
#include "delaymask/rng.h"

namespace delaymask {

enum class Family { kExponential, kStaircase, kUniform, kZeroInflatedUniform };

absl::string_view FamilyName(Family family);
absl::StatusOr<Family> ParseFamily(absl::string_view name);

struct Exponential {
  double rate;
};

// Staircase noise folded onto [0, inf): period k in [k delta, (k+1) delta)
// has mass proportional to e^{-k eps}; the first gamma fraction of each
// period is denser by e^{eps}.
struct StaircaseAbs {
  double eps;
  double delta;
  double gamma;
};

struct Uniform {
  double lo;
  double hi;
};

// Zero with probability 1 - eta, else Uniform(0, hi).
struct ZeroInflatedUniform {
  double eta;
  double hi;
};

class DelaySpec;

struct Shifted {
  double offset;
  std::shared_ptr<const DelaySpec> inner;
};

class DelaySpec {
 public:
  using Variant =
      std::variant<Exponential, StaircaseAbs, Uniform, ZeroInflatedUniform,
                   Shifted>;

  DelaySpec(Exponential v) : v_(v) {}
  DelaySpec(StaircaseAbs v) : v_(v) {}
  DelaySpec(Uniform v) : v_(v) {}
  DelaySpec(ZeroInflatedUniform v) : v_(v) {}
  DelaySpec(Shifted v) : v_(std::move(v)) {}

  static DelaySpec ShiftedBy(double offset, DelaySpec inner);

  const Variant& variant() const { return v_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  friend bool operator==(const DelaySpec& a, const DelaySpec& b);

 private:
  Variant v_;
};

// Checks the invariants of every variant (finite, non-negative support).
absl::Status ValidateSpec(const DelaySpec& spec);

// Uniform draws consumed per sample.
int DrawsPerSample(const DelaySpec& spec);

double ExpectedDelay(const DelaySpec& spec);

// Lower end of the support.
double SupportLowerBound(const DelaySpec& spec);

// Maps DrawsPerSample(spec) * out.size() uniforms to out.size() delays.
// Sample i uses uniforms [i k, (i + 1) k).
void TransformUniforms(const DelaySpec& spec, std::span<const double> uniforms,
                       std::span<double> out);

double Sample(const DelaySpec& spec, Rng& rng);
void SampleInto(const DelaySpec& spec, Rng& rng, std::span<double> out);

// A (batched, unbatched) pair that is (eps_ind, gap) one-sided
// indistinguishable.
struct NoisePair {
  DelaySpec batched;
  DelaySpec unbatched;
  double eps_ind;
  double gap;
};

// eta is required for kZeroInflatedUniform and ignored otherwise.
absl::StatusOr<NoisePair> BuildPair(Family family, double eps_ind, double gap,
                                    std::optional<double> eta = std::nullopt);

}  // namespace delaymask

#endif  // DELAYMASK_DISTRIBUTIONS_H_
