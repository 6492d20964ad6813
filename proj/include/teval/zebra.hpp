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

#ifndef TEVAL_ZEBRA_HPP
#define TEVAL_ZEBRA_HPP

#include <string>
#include <string_view>

#include "teval/calibration.hpp"
#include "teval/types.hpp"

namespace teval {

// Zero-evidence privacy profile of a set of verification scores: how much an
// adversary learns on average over all prior beliefs (bits), and the
// strongest evidence available against a single individual.

enum class ZebraTag { k0, kA, kB, kC, kD, kE, kF };

std::string_view to_string(ZebraTag tag);

struct ZebraOptions {
  // Prior log-odds grid [-bound, bound] with the given step, averaged with
  // the trapezoid rule.
  real bound = 10.0;
  real step = 0.01;
  PavOptions pav;  // smoothed by default
  // Negative averages (possible only through smoothing) are reported as 0.
  bool clamp_negative = true;
};

struct ZebraProfile {
  real population_bits = 0.0;
  real worst_case_log10_odds = 0.0;
  ZebraTag tag = ZebraTag::k0;
};

real population_disclosure(const ScoresRef& tar, const ScoresRef& non,
                           const ZebraOptions& options = {});

// max |calibrated LLR| over all trials, in log10 odds.
real worst_case(const ScoresRef& tar, const ScoresRef& non,
                const ZebraOptions& options = {});

// Bins of the categorical tag, by posterior odds ratio r >= 1:
//   0: r == 1 (within 1e-9)   A: [1, 10)      B: [10, 100)
//   C: [100, 1e4)             D: [1e4, 1e5)   E: [1e5, 1e6)   F: >= 1e6
ZebraTag tag_from_odds(real odds_ratio);
// Same bins, taking log10 of the odds ratio.
ZebraTag tag(real log10_odds);

ZebraProfile zebra_profile(const ScoresRef& tar, const ScoresRef& non,
                           const ZebraOptions& options = {});

// "name (population, individual, tag)"
std::string render_profile(std::string_view name, const ZebraProfile& profile);

}  // namespace teval

#endif  // TEVAL_ZEBRA_HPP
