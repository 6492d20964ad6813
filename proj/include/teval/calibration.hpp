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

#ifndef TEVAL_CALIBRATION_HPP
#define TEVAL_CALIBRATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "teval/types.hpp"

namespace teval {

// LLRs use the natural log throughout; results in bits convert at the end.

struct LlrSet {
  VectorXr tar;
  VectorXr non;
};

inline constexpr real kLlrClamp = 30.0;

// log(1 + e^x) without overflow.
real softplus(real x);
real sigmoid(real x);
// Entropy in bits of a Bernoulli(p).
real binary_entropy(real p);

real cllr(const ScoresRef& tar, const ScoresRef& non);
inline real cllr(const LlrSet& llrs) { return cllr(llrs.tar, llrs.non); }

/// Empirical cross-entropy in bits at prior log-odds beta. ece(., 0) is
/// cllr.
real ece(const ScoresRef& tar, const ScoresRef& non, real beta);
inline real ece(const LlrSet& llrs, real beta) {
  return ece(llrs.tar, llrs.non, beta);
}

struct PavOptions {
  // Total weight of the two virtual trials (a target below every score and
  // a nontarget above every score). The target gets 2*eps*N_tar/N and the
  // nontarget 2*eps*N_non/N, i.e. eps each when the classes are balanced.
  // nullopt selects eps = 1/(N_tar + N_non); 0 disables smoothing.
  std::optional<real> epsilon;
  real clamp = kLlrClamp;

  static PavOptions unsmoothed() { return PavOptions{0.0, kLlrClamp}; }
};

/// Isotonic (pool-adjacent-violators) map from raw scores to LLRs.
/// Segment k covers raw scores in [breakpoints[k], breakpoints[k+1]).
struct CalibrationMap {
  std::vector<real> breakpoints;
  std::vector<real> llr_values;
  // Per segment, including the virtual smoothing trials.
  std::vector<real> target_weight;
  std::vector<real> total_weight;

  std::size_t num_segments() const { return llr_values.size(); }
  real posterior(std::size_t k) const {
    return target_weight[k] / total_weight[k];
  }

  real apply(real score) const;
  VectorXr apply(const ScoresRef& scores) const;
};

CalibrationMap pav_calibrate(const ScoresRef& tar, const ScoresRef& non,
                             const PavOptions& options = {});

LlrSet calibrated_llrs(const ScoresRef& tar, const ScoresRef& non,
                       const PavOptions& options = {});

/// Cllr after the optimal monotone recalibration. Unsmoothed by default so
/// that cllr_min <= cllr holds for LLR inputs; see PavOptions.
real cllr_min(const ScoresRef& tar, const ScoresRef& non,
              const PavOptions& options = PavOptions::unsmoothed());

struct EcePoint {
  real beta = 0.0;
  real raw = 0.0;         // scores taken as LLRs as-is
  real calibrated = 0.0;  // PAV-calibrated scores
  real reference = 0.0;   // LLR == 0, i.e. the prior entropy
};

/// Evaluates the three ECE variants at beta = -bound, -bound+step, ..., bound.
std::vector<EcePoint> ece_curve(const ScoresRef& tar, const ScoresRef& non,
                                real bound, real step,
                                const PavOptions& options = {});

// CSV with header "beta,ece_raw,ece_calibrated,ece_default".
std::string ece_curve_csv(const std::vector<EcePoint>& curve);

}  // namespace teval

#endif  // TEVAL_CALIBRATION_HPP
