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

#include "teval/detmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "teval/error.hpp"
#include "teval/score_io.hpp"

namespace teval {
namespace {

void require_non_empty(const ScoresRef& pos, const ScoresRef& neg) {
  if (pos.size() == 0 || neg.size() == 0) {
    throw Error(ErrorCategory::kEmptyClass,
                pos.size() == 0 ? "positive class has no scores"
                                : "negative class has no scores");
  }
}

std::vector<real> sorted_copy(const ScoresRef& v) {
  std::vector<real> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

// Threshold strictly between a < b. Falls back to b when the midpoint rounds
// onto a, which selects the same accept set.
real threshold_between(real a, real b) {
  real mid = a / 2 + b / 2;
  return mid > a ? mid : b;
}

real threshold_above(real max_score) {
  real t = max_score + 1;
  return t > max_score ? t : std::nextafter(max_score, HUGE_VAL);
}

// Walks the thresholds of det_curve in increasing order and calls
// fn(threshold, misses, false_alarms) with integer error counts.
template <typename Fn>
void sweep(const ScoresRef& pos, const ScoresRef& neg, Fn&& fn) {
  require_non_empty(pos, neg);
  const std::vector<real> p = sorted_copy(pos);
  const std::vector<real> n = sorted_copy(neg);
  const std::size_t np = p.size();
  const std::size_t nn = n.size();

  fn(-std::numeric_limits<real>::infinity(), std::size_t{0}, nn);

  std::size_t i = 0;  // positives <= current value (rejected)
  std::size_t j = 0;  // negatives <= current value
  while (i < np || j < nn) {
    real v = std::min(i < np ? p[i] : HUGE_VAL, j < nn ? n[j] : HUGE_VAL);
    while (i < np && p[i] == v) ++i;
    while (j < nn && n[j] == v) ++j;
    if (i == np && j == nn) {
      fn(threshold_above(v), np, std::size_t{0});
      break;
    }
    real next = std::min(i < np ? p[i] : HUGE_VAL, j < nn ? n[j] : HUGE_VAL);
    fn(threshold_between(v, next), i, nn - j);
  }
}

}  // namespace

ErrorRates error_rates(const ScoresRef& pos, const ScoresRef& neg,
                       real threshold) {
  require_non_empty(pos, neg);
  const auto misses = (pos.array() < threshold).count();
  const auto false_alarms = (neg.array() >= threshold).count();
  return {static_cast<real>(misses) / static_cast<real>(pos.size()),
          static_cast<real>(false_alarms) / static_cast<real>(neg.size())};
}

std::vector<OperatingPoint> det_curve(const ScoresRef& pos,
                                      const ScoresRef& neg) {
  std::vector<OperatingPoint> points;
  points.reserve(static_cast<std::size_t>(pos.size() + neg.size()) + 1);
  const real np = static_cast<real>(pos.size());
  const real nn = static_cast<real>(neg.size());
  sweep(pos, neg, [&](real t, std::size_t miss, std::size_t fa) {
    points.push_back({t, static_cast<real>(miss) / np,
                      static_cast<real>(fa) / nn});
  });
  return points;
}

EerResult eer(const ScoresRef& pos, const ScoresRef& neg) {
  // |p_fa - p_miss| is compared as |fa*np - miss*nn| in exact integers so
  // that ties are detected exactly.
  const auto np = static_cast<std::int64_t>(pos.size());
  const auto nn = static_cast<std::int64_t>(neg.size());
  std::int64_t best_gap = std::numeric_limits<std::int64_t>::max();
  std::size_t best_miss = 0;
  std::size_t best_fa = 0;
  real best_threshold = 0.0;
  sweep(pos, neg, [&](real t, std::size_t miss, std::size_t fa) {
    std::int64_t gap = static_cast<std::int64_t>(fa) * np -
                       static_cast<std::int64_t>(miss) * nn;
    if (gap < 0) gap = -gap;
    if (gap < best_gap) {
      best_gap = gap;
      best_miss = miss;
      best_fa = fa;
      best_threshold = t;
    }
  });
  const real p_miss = static_cast<real>(best_miss) / static_cast<real>(np);
  const real p_fa = static_cast<real>(best_fa) / static_cast<real>(nn);
  return {(p_miss + p_fa) / 2, best_threshold};
}

std::string det_curve_csv(const std::vector<OperatingPoint>& points) {
  std::string out = "threshold,p_miss,p_fa\n";
  for (const auto& pt : points) {
    out += format_real(pt.threshold);
    out += ',';
    out += format_real(pt.p_miss);
    out += ',';
    out += format_real(pt.p_fa);
    out += '\n';
  }
  return out;
}

}  // namespace teval
