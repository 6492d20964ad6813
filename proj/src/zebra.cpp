// Copyright 2026 The tandem-eval Authors
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

#include "teval/zebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "teval/error.hpp"

namespace teval {
namespace {

constexpr real kLn2 = 0.69314718055994530942;
constexpr real kLn10 = 2.30258509299404568402;

// Distinct LLR values with their relative frequency within one class.
std::vector<std::pair<real, real>> histogram(const VectorXr& llrs) {
  std::vector<real> sorted(llrs.data(), llrs.data() + llrs.size());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<real, real>> out;
  const real unit = 1.0 / static_cast<real>(sorted.size());
  for (real v : sorted) {
    if (!out.empty() && out.back().first == v) {
      out.back().second += unit;
    } else {
      out.emplace_back(v, unit);
    }
  }
  return out;
}

real weighted_ece(const std::vector<std::pair<real, real>>& tar,
                  const std::vector<std::pair<real, real>>& non, real beta) {
  const real pi = sigmoid(beta);
  real t = 0.0;
  for (auto [llr, w] : tar) t += w * softplus(-llr - beta);
  real n = 0.0;
  for (auto [llr, w] : non) n += w * softplus(llr + beta);
  return (pi * t + (1 - pi) * n) / kLn2;
}

}  // namespace

std::string_view to_string(ZebraTag tag) {
  switch (tag) {
    case ZebraTag::k0: return "0";
    case ZebraTag::kA: return "A";
    case ZebraTag::kB: return "B";
    case ZebraTag::kC: return "C";
    case ZebraTag::kD: return "D";
    case ZebraTag::kE: return "E";
    case ZebraTag::kF: return "F";
  }
  return "?";
}

real population_disclosure(const ScoresRef& tar, const ScoresRef& non,
                           const ZebraOptions& options) {
  if (!(options.step > 0) || !(options.bound > 0)) {
    throw Error(ErrorCategory::kDomain, "prior grid needs step > 0, bound > 0");
  }
  const LlrSet calibrated = calibrated_llrs(tar, non, options.pav);
  const auto tar_hist = histogram(calibrated.tar);
  const auto non_hist = histogram(calibrated.non);
  const std::vector<std::pair<real, real>> zero = {{0.0, 1.0}};

  const auto steps = std::llround(2 * options.bound / options.step);
  const real h = 2 * options.bound / static_cast<real>(steps);
  real integral = 0.0;
  for (long long k = 0; k <= steps; ++k) {
    const real beta = -options.bound + static_cast<real>(k) * h;
    const real gap = weighted_ece(zero, zero, beta) -
                     weighted_ece(tar_hist, non_hist, beta);
    integral += (k == 0 || k == steps) ? gap / 2 : gap;
  }
  const real mean = integral * h / (2 * options.bound);
  return options.clamp_negative ? std::max(mean, 0.0) : mean;
}

real worst_case(const ScoresRef& tar, const ScoresRef& non,
                const ZebraOptions& options) {
  const LlrSet calibrated = calibrated_llrs(tar, non, options.pav);
  const real max_abs = std::max(calibrated.tar.cwiseAbs().maxCoeff(),
                                calibrated.non.cwiseAbs().maxCoeff());
  return max_abs / kLn10;
}

ZebraTag tag_from_odds(real r) {
  if (std::isnan(r) || r < 1.0 - 1e-9) {
    throw Error(ErrorCategory::kDomain,
                "odds ratio below even (" + std::to_string(r) + ")");
  }
  if (std::abs(r - 1.0) <= 1e-9) return ZebraTag::k0;
  if (r < 1e1) return ZebraTag::kA;
  if (r < 1e2) return ZebraTag::kB;
  if (r < 1e4) return ZebraTag::kC;
  if (r < 1e5) return ZebraTag::kD;
  if (r < 1e6) return ZebraTag::kE;
  return ZebraTag::kF;
}

ZebraTag tag(real log10_odds) { return tag_from_odds(std::pow(10.0, log10_odds)); }

ZebraProfile zebra_profile(const ScoresRef& tar, const ScoresRef& non,
                           const ZebraOptions& options) {
  ZebraProfile profile;
  profile.population_bits = population_disclosure(tar, non, options);
  profile.worst_case_log10_odds = worst_case(tar, non, options);
  profile.tag = tag(profile.worst_case_log10_odds);
  return profile;
}

std::string render_profile(std::string_view name, const ZebraProfile& p) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), " (%.3f bits, %.3f log10 odds, %s)",
                p.population_bits, p.worst_case_log10_odds,
                std::string(to_string(p.tag)).c_str());
  return std::string(name) + buf;
}

}  // namespace teval
