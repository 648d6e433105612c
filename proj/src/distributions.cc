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

#include "delaymask/distributions.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "delaymask/kernels.h"
#include "delaymask/status.h"

namespace delaymask {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool Positive(double x) { return std::isfinite(x) && x > 0.0; }
bool NonNegative(double x) { return std::isfinite(x) && x >= 0.0; }

// Probability that a staircase draw lands in the dense first band of its
// period.
double FirstBandProbability(const StaircaseAbs& s) {
  double b = std::exp(-s.eps);
  return s.gamma / (s.gamma + b * (1.0 - s.gamma));
}

}  // namespace

absl::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kExponential:
      return "exponential";
    case Family::kStaircase:
      return "staircase";
    case Family::kUniform:
      return "uniform";
    case Family::kZeroInflatedUniform:
      return "ziu";
  }
  return "unknown";
}

absl::StatusOr<Family> ParseFamily(absl::string_view name) {
  for (Family f : {Family::kExponential, Family::kStaircase, Family::kUniform,
                   Family::kZeroInflatedUniform}) {
    if (FamilyName(f) == name) return f;
  }
  return ConfigError("UnknownFamily", absl::StrCat("no family named '", name,
                                                   "'"));
}

DelaySpec DelaySpec::ShiftedBy(double offset, DelaySpec inner) {
  return DelaySpec(
      Shifted{offset, std::make_shared<const DelaySpec>(std::move(inner))});
}

bool operator==(const DelaySpec& a, const DelaySpec& b) {
  if (a.v_.index() != b.v_.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Exponential& x) {
            return x.rate == std::get<Exponential>(b.v_).rate;
          },
          [&](const StaircaseAbs& x) {
            const auto& y = std::get<StaircaseAbs>(b.v_);
            return x.eps == y.eps && x.delta == y.delta && x.gamma == y.gamma;
          },
          [&](const Uniform& x) {
            const auto& y = std::get<Uniform>(b.v_);
            return x.lo == y.lo && x.hi == y.hi;
          },
          [&](const ZeroInflatedUniform& x) {
            const auto& y = std::get<ZeroInflatedUniform>(b.v_);
            return x.eta == y.eta && x.hi == y.hi;
          },
          [&](const Shifted& x) {
            const auto& y = std::get<Shifted>(b.v_);
            if (x.offset != y.offset) return false;
            if (!x.inner || !y.inner) return x.inner == y.inner;
            return *x.inner == *y.inner;
          }},
      a.v_);
}

absl::Status ValidateSpec(const DelaySpec& spec) {
  return std::visit(
      Overloaded{
          [](const Exponential& x) -> absl::Status {
            if (!Positive(x.rate)) {
              return ConfigError("NonPositiveParam",
                                 absl::StrCat("exponential rate ", x.rate));
            }
            return absl::OkStatus();
          },
          [](const StaircaseAbs& x) -> absl::Status {
            if (!Positive(x.eps) || !Positive(x.delta)) {
              return ConfigError("NonPositiveParam",
                                 "staircase eps and delta must be positive");
            }
            if (!(x.gamma > 0.0 && x.gamma < 1.0)) {
              return ConfigError("NonPositiveParam",
                                 absl::StrCat("staircase gamma ", x.gamma,
                                              " outside (0, 1)"));
            }
            return absl::OkStatus();
          },
          [](const Uniform& x) -> absl::Status {
            if (!NonNegative(x.lo) || !std::isfinite(x.hi) || !(x.hi > x.lo)) {
              return ConfigError("NonPositiveParam",
                                 absl::StrCat("uniform bounds [", x.lo, ", ",
                                              x.hi, ")"));
            }
            return absl::OkStatus();
          },
          [](const ZeroInflatedUniform& x) -> absl::Status {
            if (!(x.eta > 0.0 && x.eta <= 1.0)) {
              return InfeasibleError("EtaOutOfRange",
                                     absl::StrCat("eta ", x.eta));
            }
            if (!Positive(x.hi)) {
              return ConfigError("NonPositiveParam",
                                 absl::StrCat("ziu hi ", x.hi));
            }
            return absl::OkStatus();
          },
          [](const Shifted& x) -> absl::Status {
            if (!NonNegative(x.offset)) {
              return ConfigError("NonPositiveParam",
                                 absl::StrCat("shift offset ", x.offset));
            }
            if (!x.inner) {
              return ConfigError("NonPositiveParam", "shift without inner");
            }
            return ValidateSpec(*x.inner);
          }},
      spec.variant());
}

int DrawsPerSample(const DelaySpec& spec) {
  return std::visit(Overloaded{[](const StaircaseAbs&) { return 3; },
                               [](const Shifted& x) {
                                 return DrawsPerSample(*x.inner);
                               },
                               [](const auto&) { return 1; }},
                    spec.variant());
}

double ExpectedDelay(const DelaySpec& spec) {
  return std::visit(
      Overloaded{
          [](const Exponential& x) { return 1.0 / x.rate; },
          [](const StaircaseAbs& x) {
            // Mean period index plus mean position inside a period.
            double b = std::exp(-x.eps);
            double g = x.gamma;
            double within = (g * g + (1.0 - g * g) * b) /
                            (2.0 * (g + (1.0 - g) * b));
            return x.delta * (b / (1.0 - b) + within);
          },
          [](const Uniform& x) { return 0.5 * (x.lo + x.hi); },
          [](const ZeroInflatedUniform& x) { return 0.5 * x.eta * x.hi; },
          [](const Shifted& x) { return x.offset + ExpectedDelay(*x.inner); }},
      spec.variant());
}

double SupportLowerBound(const DelaySpec& spec) {
  return std::visit(
      Overloaded{[](const Uniform& x) { return x.lo; },
                 [](const Shifted& x) {
                   return x.offset + SupportLowerBound(*x.inner);
                 },
                 [](const auto&) { return 0.0; }},
      spec.variant());
}

void TransformUniforms(const DelaySpec& spec, std::span<const double> uniforms,
                       std::span<double> out) {
  const kernels::KernelTable& k = kernels::Active();
  std::visit(
      Overloaded{
          [&](const Exponential& x) {
            for (size_t i = 0; i < out.size(); ++i) {
              out[i] = -std::log1p(-uniforms[i]) / x.rate;
            }
          },
          [&](const StaircaseAbs& x) {
            const double p_first = FirstBandProbability(x);
            for (size_t i = 0; i < out.size(); ++i) {
              const double* u = &uniforms[3 * i];
              double period = std::floor(-std::log1p(-u[0]) / x.eps);
              double pos = u[1] < p_first
                               ? x.gamma * u[2]
                               : x.gamma + (1.0 - x.gamma) * u[2];
              out[i] = (period + pos) * x.delta;
            }
          },
          [&](const Uniform& x) {
            k.affine(uniforms.first(out.size()), x.lo, x.hi - x.lo, out);
          },
          [&](const ZeroInflatedUniform& x) {
            k.zero_inflated(uniforms.first(out.size()), 1.0 - x.eta,
                            x.hi / x.eta, out);
          },
          [&](const Shifted& x) {
            TransformUniforms(*x.inner, uniforms, out);
            k.affine(out, x.offset, 1.0, out);
          }},
      spec.variant());
}

double Sample(const DelaySpec& spec, Rng& rng) {
  double out = 0.0;
  SampleInto(spec, rng, std::span<double>(&out, 1));
  return out;
}

void SampleInto(const DelaySpec& spec, Rng& rng, std::span<double> out) {
  std::vector<double> u(out.size() * DrawsPerSample(spec));
  rng.FillUniform(u);
  TransformUniforms(spec, u, out);
}

absl::StatusOr<NoisePair> BuildPair(Family family, double eps_ind, double gap,
                                    std::optional<double> eta) {
  if (!Positive(eps_ind)) {
    return ConfigError("NonPositiveParam", absl::StrCat("eps_ind ", eps_ind));
  }
  if (!Positive(gap)) {
    return ConfigError("NonPositiveParam", absl::StrCat("gap ", gap));
  }
  const double c = std::exp(-eps_ind);
  // Upper end of the plain uniform pair: gap / (1 - e^-eps).
  const double uniform_hi = gap / -std::expm1(-eps_ind);
  switch (family) {
    case Family::kExponential: {
      Exponential e{eps_ind / gap};
      return NoisePair{DelaySpec::ShiftedBy(gap, e), e, eps_ind, gap};
    }
    case Family::kStaircase: {
      StaircaseAbs s{eps_ind, gap, 1.0 / (1.0 + std::exp(eps_ind / 2.0))};
      return NoisePair{DelaySpec::ShiftedBy(gap, s), s, eps_ind, gap};
    }
    case Family::kUniform:
      return NoisePair{Uniform{gap, uniform_hi}, Uniform{0.0, uniform_hi},
                       eps_ind, gap};
    case Family::kZeroInflatedUniform: {
      if (!eta.has_value()) {
        return ConfigError("EtaOutOfRange", "ziu requires eta");
      }
      double e = *eta;
      if (!(e > c + 1e-9) || e > 1.0) {
        return InfeasibleError(
            "EtaOutOfRange",
            absl::StrCat("eta ", e, " outside (", c, ", 1] at eps_ind ",
                         eps_ind));
      }
      if (e == 1.0) {
        return NoisePair{Uniform{gap, uniform_hi}, Uniform{0.0, uniform_hi},
                         eps_ind, gap};
      }
      double hi = e * gap / (e - c);
      return NoisePair{Uniform{gap, hi}, ZeroInflatedUniform{e, hi}, eps_ind,
                       gap};
    }
  }
  return ConfigError("UnknownFamily", "unhandled family");
}

}  // namespace delaymask
