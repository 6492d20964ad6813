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

#ifndef TEVAL_DETMETRICS_HPP
#define TEVAL_DETMETRICS_HPP

#include <string>
#include <vector>

#include "teval/types.hpp"

namespace teval {

// All detectors here accept a trial iff score >= threshold.

struct ErrorRates {
  real p_miss = 0.0;
  real p_fa = 0.0;
};

struct OperatingPoint {
  real threshold = 0.0;
  real p_miss = 0.0;
  real p_fa = 0.0;
};

struct EerResult {
  real eer = 0.0;
  real threshold = 0.0;
};

ErrorRates error_rates(const ScoresRef& pos, const ScoresRef& neg,
                       real threshold);

/// Operating points at -inf, at the midpoint between every pair of adjacent
/// distinct pooled scores, and at max score + 1, in increasing threshold
/// order. p_miss is non-decreasing and p_fa non-increasing along the list.
std::vector<OperatingPoint> det_curve(const ScoresRef& pos,
                                      const ScoresRef& neg);

/// Equal error rate over the det_curve thresholds: the point minimising
/// |p_fa - p_miss| (smallest threshold on ties), reported as the mean of the
/// two rates there. This is the sweep convention, not the ROC convex hull.
EerResult eer(const ScoresRef& pos, const ScoresRef& neg);

// CSV with header "threshold,p_miss,p_fa".
std::string det_curve_csv(const std::vector<OperatingPoint>& points);

}  // namespace teval

#endif  // TEVAL_DETMETRICS_HPP
