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

#ifndef TEVAL_TANDEM_HPP
#define TEVAL_TANDEM_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "teval/detmetrics.hpp"
#include "teval/score_io.hpp"
#include "teval/types.hpp"

namespace teval {

// Countermeasure (CM) gate followed by speaker verification (ASV). A trial is
// accepted only if both subsystems accept it (score >= threshold).
//
// CM error roles: a CM miss is a bona fide trial (target or nontarget)
// rejected as spoof; a CM false alarm is a spoof trial passed as bona fide.

struct CostModel {
  real c_miss = 1.0;
  real c_fa = 10.0;
  real c_fa_spoof = 10.0;
  real pi_tar = 0.475;
  real pi_non = 0.05;
  real pi_spoof = 0.475;

  // Throws DegenerateConfigError on non-positive costs, negative priors or
  // priors not summing to one (tolerance 1e-9).
  void validate() const;

  // Illustrative access-control setting: targets and spoofing attacks about
  // equally likely, nontargets rare, false accepts ten times the cost of a
  // false reject. Not calibrated to any particular evaluation.
  static CostModel illustrative_default() { return CostModel{}; }

  bool operator==(const CostModel&) const = default;
};

struct AsvOperatingPoint {
  real threshold = 0.0;
  real p_miss = 0.0;
  real p_fa = 0.0;
  real p_fa_spoof = 0.0;
};

// t-DCF(s) = c0 + c1 * P_miss_cm(s) + c2 * P_fa_cm(s)
struct TdcfCoefficients {
  real c0 = 0.0;
  real c1 = 0.0;
  real c2 = 0.0;

  real cost(real p_miss_cm, real p_fa_cm) const {
    return c0 + c1 * p_miss_cm + c2 * p_fa_cm;
  }
  // Cost of the better of the two trivial CMs (accept all / reject all).
  real normalizer() const { return c0 + std::min(c1, c2); }
  real normalized(real p_miss_cm, real p_fa_cm) const {
    return cost(p_miss_cm, p_fa_cm) / normalizer();
  }
};

enum class CascadeOutcome { kRejectedByCm, kRejectedByAsv, kAccepted };

std::string_view to_string(CascadeOutcome outcome);

AsvOperatingPoint asv_rates(const TrialTable& table, real asv_threshold);

// ASV threshold at the target/nontarget EER.
real asv_eer_threshold(const TrialTable& table);
// CM threshold at the bona fide/spoof EER.
EerResult cm_eer(const TrialTable& table);

CascadeOutcome cascade(const TrialRow& row, real cm_threshold,
                       real asv_threshold);

/// Joint empirical cost of the cascade: per-class fractions of cascade
/// outcomes weighted by priors and costs. Makes no independence assumption.
real empirical_tandem_cost(const TrialTable& table, real cm_threshold,
                           real asv_threshold, const CostModel& cost);

/// Closed-form coefficients. They equal the expected cascade cost when CM
/// and ASV scores are independent given the class. Throws
/// DegenerateConfigError when c1 <= 0 or c2 <= 0.
TdcfCoefficients tdcf_coefficients(const CostModel& cost,
                                   const AsvOperatingPoint& asv);

struct TdcfPoint {
  real theta_cm = 0.0;
  real p_miss_cm = 0.0;
  real p_fa_cm = 0.0;
  real t_dcf_norm = 0.0;
};

std::vector<TdcfPoint> tdcf_curve(const TrialTable& table,
                                  const CostModel& cost, real asv_threshold);
std::vector<TdcfPoint> tdcf_curve(const ScoresRef& bona_fide_cm,
                                  const ScoresRef& spoof_cm,
                                  const TdcfCoefficients& coefficients);

struct MinTdcf {
  real value = 0.0;
  real theta_cm = 0.0;
};

// Smallest point of the curve; the lowest threshold wins ties.
MinTdcf min_tdcf(const std::vector<TdcfPoint>& curve);
MinTdcf min_tdcf(const TrialTable& table, const CostModel& cost,
                 real asv_threshold);

struct PrivacyReport {
  std::size_t trials = 0;
  real accepted = 0.0;           // CM bona fide, ASV accept: high privacy
  real rejected_by_asv = 0.0;    // CM bona fide, ASV reject: low privacy
  real rejected_by_cm = 0.0;     // flagged as spoof by the CM
};

PrivacyReport privacy_report(const TrialTable& table, real cm_threshold,
                             real asv_threshold);

// CSV with header "theta_cm,p_miss_cm,p_fa_cm,t_dcf_norm".
std::string tdcf_curve_csv(const std::vector<TdcfPoint>& curve);

}  // namespace teval

#endif  // TEVAL_TANDEM_HPP
