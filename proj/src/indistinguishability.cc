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

#include "delaymask/indistinguishability.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "delaymask/status.h"

namespace delaymask {
namespace {

constexpr double kTailMass = 1e-15;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void AppendPieces(const DelaySpec& spec, double offset, double horizon,
                  PiecewiseDensity& out) {
  auto add = [&](double lo, double hi, double log_coef, double decay) {
    lo += offset;
    hi = std::min(hi + offset, horizon);
    if (hi > lo) out.pieces.push_back({lo, hi, log_coef, decay});
  };
  std::visit(
      Overloaded{
          [&](const Exponential& x) {
            add(0.0, kInf, std::log(x.rate), x.rate);
          },
          [&](const StaircaseAbs& x) {
            const double b = std::exp(-x.eps);
            // Doubled two-sided normalization.
            const double log_a =
                std::log(-std::expm1(-x.eps)) -
                std::log(x.delta * (x.gamma + b * (1.0 - x.gamma)));
            for (long k = 0;; ++k) {
              double start = static_cast<double>(k) * x.delta;
              if (start + offset >= horizon) break;
              double mid = (static_cast<double>(k) + x.gamma) * x.delta;
              double end = static_cast<double>(k + 1) * x.delta;
              add(start, mid, log_a - static_cast<double>(k) * x.eps, 0.0);
              add(mid, end, log_a - static_cast<double>(k + 1) * x.eps, 0.0);
            }
          },
          [&](const Uniform& x) {
            add(x.lo, x.hi, -std::log(x.hi - x.lo), 0.0);
          },
          [&](const ZeroInflatedUniform& x) {
            if (x.eta < 1.0) out.atoms.push_back({offset, 1.0 - x.eta});
            add(0.0, x.hi, std::log(x.eta / x.hi), 0.0);
          },
          [&](const Shifted& x) {
            AppendPieces(*x.inner, offset + x.offset, horizon, out);
          }},
      spec.variant());
}

// Index of the piece containing x, or -1.
long FindPiece(const std::vector<DensityPiece>& pieces, double x) {
  auto it = std::upper_bound(
      pieces.begin(), pieces.end(), x,
      [](double v, const DensityPiece& p) { return v < p.lo; });
  if (it == pieces.begin()) return -1;
  --it;
  return x < it->hi ? static_cast<long>(it - pieces.begin()) : -1;
}

double LogDensity(const DensityPiece& p, double x) {
  return p.log_coef - p.decay * (x - p.lo);
}

}  // namespace

double EffectiveSupportEnd(const DelaySpec& spec, double tail_mass) {
  const double log_tail = -std::log(tail_mass);
  return std::visit(
      Overloaded{
          [&](const Exponential& x) { return log_tail / x.rate; },
          [&](const StaircaseAbs& x) {
            return std::ceil(log_tail / x.eps) * x.delta;
          },
          [](const Uniform& x) { return x.hi; },
          [](const ZeroInflatedUniform& x) { return x.hi; },
          [&](const Shifted& x) {
            return x.offset + EffectiveSupportEnd(*x.inner, tail_mass);
          }},
      spec.variant());
}

absl::StatusOr<PiecewiseDensity> ToPiecewise(const DelaySpec& spec,
                                             double horizon) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) {
    return UnsupportedError("UnsupportedSpec", s.message());
  }
  PiecewiseDensity out;
  AppendPieces(spec, 0.0, horizon, out);
  std::sort(out.pieces.begin(), out.pieces.end(),
            [](const DensityPiece& a, const DensityPiece& b) {
              return a.lo < b.lo;
            });
  return out;
}

absl::StatusOr<IndistinguishabilityReport> VerifyIndistinguishable(
    const NoisePair& pair, int grid_n) {
  if (grid_n < 1) {
    return ConfigError("NonPositiveParam", absl::StrCat("grid_n ", grid_n));
  }
  if (!(pair.gap >= 0.0) || !(pair.eps_ind > 0.0)) {
    return ConfigError("NonPositiveParam", "pair gap and eps_ind");
  }
  const double horizon =
      std::max(EffectiveSupportEnd(pair.batched, kTailMass),
               EffectiveSupportEnd(pair.unbatched, kTailMass));
  DELAYMASK_ASSIGN_OR_RETURN(PiecewiseDensity b,
                             ToPiecewise(pair.batched, horizon));
  DELAYMASK_ASSIGN_OR_RETURN(PiecewiseDensity u,
                             ToPiecewise(pair.unbatched, horizon));
  const double tol = 1e-10 * std::max(1.0, horizon);

  IndistinguishabilityReport report{-kInf, pair.eps_ind, false, 0.0, 0.0, 0.0};
  auto record = [&](double value, double lo, double hi, double shift) {
    if (value > report.max_log_ratio) {
      report.max_log_ratio = value;
      report.witness_lo = lo;
      report.witness_hi = hi;
      report.witness_shift = shift;
    }
  };

  std::vector<double> shifts = {0.0};
  for (int k = 1; k <= grid_n; ++k) {
    shifts.push_back(pair.gap * k / (grid_n + 1));
  }
  shifts.push_back(pair.gap);

  double b_lo = kInf;
  double b_hi = -kInf;
  for (const DensityPiece& p : b.pieces) {
    b_lo = std::min(b_lo, p.lo);
    b_hi = std::max(b_hi, p.hi);
  }

  std::vector<double> points;
  for (double t0 : shifts) {
    // Atoms of B need a matching atom of U at the shifted point.
    for (const PointMass& a : b.atoms) {
      double match = 0.0;
      for (const PointMass& c : u.atoms) {
        if (std::abs(c.at + t0 - a.at) <= tol) match += c.mass;
      }
      record(match > 0.0 ? std::log(a.mass / match) : kInf, a.at, a.at, t0);
    }
    if (b.pieces.empty()) continue;

    points.clear();
    for (const DensityPiece& p : b.pieces) {
      points.push_back(p.lo);
      points.push_back(p.hi);
    }
    for (const DensityPiece& p : u.pieces) {
      for (double x : {p.lo + t0, p.hi + t0}) {
        if (x > b_lo && x < b_hi) points.push_back(x);
      }
    }
    for (int k = 1; k < grid_n; ++k) {
      points.push_back(b_lo + (b_hi - b_lo) * k / grid_n);
    }
    std::sort(points.begin(), points.end());
    size_t kept = 0;
    for (double x : points) {
      if (kept == 0 || x > points[kept - 1] + tol) points[kept++] = x;
    }
    points.resize(kept);

    // On a cell both densities are log-linear, so the ratio is extremal at
    // an endpoint.
    for (size_t j = 0; j + 1 < points.size(); ++j) {
      double x0 = points[j];
      double x1 = points[j + 1];
      double mid = 0.5 * (x0 + x1);
      long pb = FindPiece(b.pieces, mid);
      if (pb < 0) continue;
      long pu = FindPiece(u.pieces, mid - t0);
      if (pu < 0) {
        record(kInf, x0, x1, t0);
        continue;
      }
      const DensityPiece& db = b.pieces[pb];
      const DensityPiece& du = u.pieces[pu];
      double r0 = LogDensity(db, x0) - LogDensity(du, x0 - t0);
      double r1 = LogDensity(db, x1) - LogDensity(du, x1 - t0);
      record(std::max(r0, r1), x0, x1, t0);
    }
  }
  report.passes = report.max_log_ratio <= pair.eps_ind + 1e-9;
  return report;
}

}  // namespace delaymask
