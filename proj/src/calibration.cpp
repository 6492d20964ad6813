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

#include "teval/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "teval/error.hpp"
#include "teval/score_io.hpp"

namespace teval {
namespace {

constexpr real kLn2 = 0.69314718055994530942;

void require_non_empty(const ScoresRef& tar, const ScoresRef& non) {
  if (tar.size() == 0 || non.size() == 0) {
    throw Error(ErrorCategory::kEmptyClass,
                tar.size() == 0 ? "no target scores" : "no nontarget scores");
  }
}

real mean_softplus(const ScoresRef& s, real sign, real offset) {
  real sum = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    sum += softplus(sign * s[i] + offset);
  }
  return sum / static_cast<real>(s.size());
}

struct Block {
  real target_weight;
  real weight;
  real lo;
};

}  // namespace

real softplus(real x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

real sigmoid(real x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const real e = std::exp(x);
  return e / (1.0 + e);
}

real binary_entropy(real p) {
  real h = 0.0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

real cllr(const ScoresRef& tar, const ScoresRef& non) {
  require_non_empty(tar, non);
  return 0.5 * (mean_softplus(tar, -1.0, 0.0) + mean_softplus(non, 1.0, 0.0)) /
         kLn2;
}

real ece(const ScoresRef& tar, const ScoresRef& non, real beta) {
  require_non_empty(tar, non);
  if (!std::isfinite(beta)) {
    throw Error(ErrorCategory::kDomain, "prior log-odds must be finite");
  }
  const real pi = sigmoid(beta);
  return (pi * mean_softplus(tar, -1.0, -beta) +
          (1 - pi) * mean_softplus(non, 1.0, beta)) /
         kLn2;
}

real CalibrationMap::apply(real score) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), score);
  std::size_t k = it == breakpoints.begin()
                      ? 0
                      : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  return llr_values[k];
}

VectorXr CalibrationMap::apply(const ScoresRef& scores) const {
  VectorXr out(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i) out[i] = apply(scores[i]);
  return out;
}

CalibrationMap pav_calibrate(const ScoresRef& tar, const ScoresRef& non,
                             const PavOptions& options) {
  require_non_empty(tar, non);
  const auto n_tar = static_cast<real>(tar.size());
  const auto n_non = static_cast<real>(non.size());
  const real n = n_tar + n_non;
  const real eps = options.epsilon.value_or(1.0 / n);
  if (!(eps >= 0) || !std::isfinite(eps)) {
    throw Error(ErrorCategory::kDomain, "PAV smoothing weight must be >= 0");
  }

  // Pooled (score, is_target), sorted by score; ties form a single block.
  std::vector<std::pair<real, bool>> pooled;
  pooled.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < tar.size(); ++i) pooled.emplace_back(tar[i], true);
  for (Eigen::Index i = 0; i < non.size(); ++i) pooled.emplace_back(non[i], false);
  std::sort(pooled.begin(), pooled.end());

  std::vector<Block> stack;
  auto push = [&stack](Block b) {
    // Pool while the previous block's target rate is >= this one's.
    while (!stack.empty() && stack.back().target_weight * b.weight >=
                                 b.target_weight * stack.back().weight) {
      const Block& prev = stack.back();
      b = {prev.target_weight + b.target_weight, prev.weight + b.weight,
           prev.lo};
      stack.pop_back();
    }
    stack.push_back(b);
  };

  const real virtual_tar = 2 * eps * n_tar / n;
  const real virtual_non = 2 * eps * n_non / n;
  if (virtual_tar > 0) push({virtual_tar, virtual_tar, pooled.front().first});
  for (std::size_t i = 0; i < pooled.size();) {
    const real v = pooled[i].first;
    Block b{0.0, 0.0, v};
    for (; i < pooled.size() && pooled[i].first == v; ++i) {
      b.weight += 1;
      if (pooled[i].second) b.target_weight += 1;
    }
    push(b);
  }
  if (virtual_non > 0) push({0.0, virtual_non, HUGE_VAL});

  const real prior_log_odds = std::log(n_tar) - std::log(n_non);
  CalibrationMap map;
  for (const Block& b : stack) {
    real llr = std::log(b.target_weight) - std::log(b.weight - b.target_weight) -
               prior_log_odds;
    llr = std::clamp(llr, -options.clamp, options.clamp);
    map.breakpoints.push_back(b.lo);
    map.llr_values.push_back(llr);
    map.target_weight.push_back(b.target_weight);
    map.total_weight.push_back(b.weight);
  }
  return map;
}

LlrSet calibrated_llrs(const ScoresRef& tar, const ScoresRef& non,
                       const PavOptions& options) {
  const CalibrationMap map = pav_calibrate(tar, non, options);
  return {map.apply(tar), map.apply(non)};
}

real cllr_min(const ScoresRef& tar, const ScoresRef& non,
              const PavOptions& options) {
  return cllr(calibrated_llrs(tar, non, options));
}

std::vector<EcePoint> ece_curve(const ScoresRef& tar, const ScoresRef& non,
                                real bound, real step,
                                const PavOptions& options) {
  if (!(step > 0) || !(bound >= 0)) {
    throw Error(ErrorCategory::kDomain, "ECE grid needs step > 0, bound >= 0");
  }
  const LlrSet calibrated = calibrated_llrs(tar, non, options);
  const auto steps = static_cast<long>(std::llround(2 * bound / step));
  std::vector<EcePoint> curve;
  curve.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) {
    const real beta = -bound + static_cast<real>(k) * step;
    curve.push_back({beta, ece(tar, non, beta), ece(calibrated, beta),
                     binary_entropy(sigmoid(beta))});
  }
  return curve;
}

std::string ece_curve_csv(const std::vector<EcePoint>& curve) {
  std::string out = "beta,ece_raw,ece_calibrated,ece_default\n";
  for (const auto& p : curve) {
    out += format_real(p.beta) + ',' + format_real(p.raw) + ',' +
           format_real(p.calibrated) + ',' + format_real(p.reference) + '\n';
  }
  return out;
}

}  // namespace teval
