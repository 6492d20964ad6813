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

#include "teval/tandem.hpp"

#include <cmath>
#include <sstream>

#include "teval/error.hpp"

namespace teval {
namespace {

void require_classes(const TrialTable& table) {
  for (TrialClass c : kAllClasses) {
    if (table.count(c) == 0) {
      throw Error(ErrorCategory::kEmptyClass,
                  "table has no " + std::string(to_string(c)) + " trials");
    }
  }
}

std::string describe(const char* name, real value) {
  std::ostringstream os;
  os.precision(9);
  os << name << " = " << value;
  return os.str();
}

}  // namespace

void CostModel::validate() const {
  for (auto [name, c] : {std::pair{"c_miss", c_miss}, std::pair{"c_fa", c_fa},
                         std::pair{"c_fa_spoof", c_fa_spoof}}) {
    if (!(c > 0) || !std::isfinite(c)) {
      throw DegenerateConfigError("cost must be positive: " +
                                  describe(name, c));
    }
  }
  for (auto [name, p] :
       {std::pair{"pi_tar", pi_tar}, std::pair{"pi_non", pi_non},
        std::pair{"pi_spoof", pi_spoof}}) {
    if (!(p >= 0) || !(p <= 1)) {
      throw DegenerateConfigError("prior must lie in [0, 1]: " +
                                  describe(name, p));
    }
  }
  const real total = pi_tar + pi_non + pi_spoof;
  if (std::abs(total - 1.0) > 1e-9) {
    throw DegenerateConfigError("priors must sum to 1: " +
                                describe("pi_tar + pi_non + pi_spoof", total));
  }
}

std::string_view to_string(CascadeOutcome outcome) {
  switch (outcome) {
    case CascadeOutcome::kRejectedByCm: return "rejected_by_cm";
    case CascadeOutcome::kRejectedByAsv: return "rejected_by_asv";
    case CascadeOutcome::kAccepted: return "accepted";
  }
  return "?";
}

AsvOperatingPoint asv_rates(const TrialTable& table, real asv_threshold) {
  require_classes(table);
  std::array<std::size_t, 3> accepted{};
  for (const auto& row : table.rows()) {
    if (row.asv_score >= asv_threshold) {
      ++accepted[static_cast<std::size_t>(row.trial_class)];
    }
  }
  auto fraction = [&](TrialClass c) {
    return static_cast<real>(accepted[static_cast<std::size_t>(c)]) /
           static_cast<real>(table.count(c));
  };
  const std::size_t n_tar = table.num_target();
  const real p_miss =
      static_cast<real>(n_tar - accepted[0]) / static_cast<real>(n_tar);
  return {asv_threshold, p_miss, fraction(TrialClass::kNonTarget),
          fraction(TrialClass::kSpoof)};
}

real asv_eer_threshold(const TrialTable& table) {
  return eer(table.asv_scores(TrialClass::kTarget),
             table.asv_scores(TrialClass::kNonTarget))
      .threshold;
}

EerResult cm_eer(const TrialTable& table) {
  return eer(table.bona_fide_cm_scores(), table.cm_scores(TrialClass::kSpoof));
}

CascadeOutcome cascade(const TrialRow& row, real cm_threshold,
                       real asv_threshold) {
  if (row.cm_score < cm_threshold) return CascadeOutcome::kRejectedByCm;
  if (row.asv_score < asv_threshold) return CascadeOutcome::kRejectedByAsv;
  return CascadeOutcome::kAccepted;
}

real empirical_tandem_cost(const TrialTable& table, real cm_threshold,
                           real asv_threshold, const CostModel& cost) {
  require_classes(table);
  std::array<std::size_t, 3> accepted{};
  for (const auto& row : table.rows()) {
    if (cascade(row, cm_threshold, asv_threshold) ==
        CascadeOutcome::kAccepted) {
      ++accepted[static_cast<std::size_t>(row.trial_class)];
    }
  }
  auto fraction = [&](TrialClass c) {
    return static_cast<real>(accepted[static_cast<std::size_t>(c)]) /
           static_cast<real>(table.count(c));
  };
  const std::size_t n_tar = table.num_target();
  const real target_rejected =
      static_cast<real>(n_tar - accepted[0]) / static_cast<real>(n_tar);
  return cost.pi_tar * cost.c_miss * target_rejected +
         cost.pi_non * cost.c_fa * fraction(TrialClass::kNonTarget) +
         cost.pi_spoof * cost.c_fa_spoof * fraction(TrialClass::kSpoof);
}

TdcfCoefficients tdcf_coefficients(const CostModel& cost,
                                   const AsvOperatingPoint& asv) {
  cost.validate();
  TdcfCoefficients k;
  k.c0 = cost.pi_tar * cost.c_miss * asv.p_miss +
         cost.pi_non * cost.c_fa * asv.p_fa;
  k.c1 = cost.pi_tar * cost.c_miss * (1.0 - asv.p_miss) -
         cost.pi_non * cost.c_fa * asv.p_fa;
  k.c2 = cost.pi_spoof * cost.c_fa_spoof * asv.p_fa_spoof;
  if (!(k.c1 > 0)) {
    throw DegenerateConfigError(
        "t-DCF normalization undefined: " + describe("c1", k.c1) +
        " (ASV rejects too many targets relative to nontarget accepts)");
  }
  if (!(k.c2 > 0)) {
    throw DegenerateConfigError(
        "t-DCF normalization undefined: " + describe("c2", k.c2) +
        " (ASV accepts no spoof trial, or pi_spoof is zero)");
  }
  return k;
}

std::vector<TdcfPoint> tdcf_curve(const ScoresRef& bona_fide_cm,
                                  const ScoresRef& spoof_cm,
                                  const TdcfCoefficients& coefficients) {
  const auto det = det_curve(bona_fide_cm, spoof_cm);
  std::vector<TdcfPoint> curve;
  curve.reserve(det.size());
  for (const auto& pt : det) {
    curve.push_back({pt.threshold, pt.p_miss, pt.p_fa,
                     coefficients.normalized(pt.p_miss, pt.p_fa)});
  }
  return curve;
}

std::vector<TdcfPoint> tdcf_curve(const TrialTable& table,
                                  const CostModel& cost, real asv_threshold) {
  const auto coefficients =
      tdcf_coefficients(cost, asv_rates(table, asv_threshold));
  return tdcf_curve(table.bona_fide_cm_scores(),
                    table.cm_scores(TrialClass::kSpoof), coefficients);
}

MinTdcf min_tdcf(const std::vector<TdcfPoint>& curve) {
  if (curve.empty()) {
    throw Error(ErrorCategory::kEmptyTable, "empty t-DCF curve");
  }
  const TdcfPoint* best = &curve.front();
  for (const auto& pt : curve) {
    if (pt.t_dcf_norm < best->t_dcf_norm) best = &pt;
  }
  return {best->t_dcf_norm, best->theta_cm};
}

MinTdcf min_tdcf(const TrialTable& table, const CostModel& cost,
                 real asv_threshold) {
  return min_tdcf(tdcf_curve(table, cost, asv_threshold));
}

PrivacyReport privacy_report(const TrialTable& table, real cm_threshold,
                             real asv_threshold) {
  if (table.empty()) {
    throw Error(ErrorCategory::kEmptyTable, "privacy report needs trials");
  }
  std::array<std::size_t, 3> counts{};
  for (const auto& row : table.rows()) {
    ++counts[static_cast<std::size_t>(
        cascade(row, cm_threshold, asv_threshold))];
  }
  const auto n = static_cast<real>(table.size());
  PrivacyReport report;
  report.trials = table.size();
  report.rejected_by_cm = static_cast<real>(counts[0]) / n;
  report.rejected_by_asv = static_cast<real>(counts[1]) / n;
  report.accepted = static_cast<real>(counts[2]) / n;
  return report;
}

std::string tdcf_curve_csv(const std::vector<TdcfPoint>& curve) {
  std::string out = "theta_cm,p_miss_cm,p_fa_cm,t_dcf_norm\n";
  for (const auto& p : curve) {
    out += format_real(p.theta_cm) + ',' + format_real(p.p_miss_cm) + ',' +
           format_real(p.p_fa_cm) + ',' + format_real(p.t_dcf_norm) + '\n';
  }
  return out;
}

}  // namespace teval
