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

#ifndef TEVAL_REPORT_HPP
#define TEVAL_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "teval/detmetrics.hpp"
#include "teval/score_io.hpp"
#include "teval/tandem.hpp"
#include "teval/zebra.hpp"

namespace teval {

// Machine-readable reports. Keys keep insertion order and every real is
// rounded to 9 significant digits, so identical inputs give identical bytes.

using OrderedJson = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;

// Rounded number, or the string "inf"/"-inf"/"nan" for non-finite values.
OrderedJson json_number(real value);

// Which trials count as the anonymized population of the privacy report.
enum class PrivacyScope { kSpoof, kTarget, kNonTarget, kAll };
std::string_view to_string(PrivacyScope scope);
std::optional<PrivacyScope> parse_privacy_scope(std::string_view token);

struct TandemSettings {
  CostModel cost = CostModel::illustrative_default();
  bool cost_is_default = true;
  // ASV threshold; the target/nontarget EER threshold when unset.
  std::optional<real> asv_threshold;
  // CM threshold of the privacy report; the bona fide/spoof EER threshold
  // when unset.
  std::optional<real> cm_threshold;
  PrivacyScope privacy_scope = PrivacyScope::kSpoof;
};

struct TandemAnalysis {
  EerResult eer_cm;
  EerResult eer_asv;
  AsvOperatingPoint asv;
  TdcfCoefficients coefficients;
  std::vector<TdcfPoint> curve;
  MinTdcf min;
  real privacy_cm_threshold = 0.0;
  PrivacyReport privacy;
};

TandemAnalysis analyze_tandem(const TrialTable& table,
                              const TandemSettings& settings);

OrderedJson cost_model_json(const CostModel& cost, bool is_default);
OrderedJson eer_json(const EerResult& eer);
OrderedJson asv_operating_point_json(const AsvOperatingPoint& asv);
OrderedJson privacy_report_json(const PrivacyReport& report,
                                real cm_threshold, real asv_threshold,
                                PrivacyScope scope);
OrderedJson zebra_json(const ZebraProfile& profile);

// Header shared by every report: format version, command and the effective
// configuration.
OrderedJson report_header(const std::string& command, OrderedJson config);

// {..header, cost_model, asv_operating_point, min_t_dcf, theta_star,
//  eer_cm, eer_asv, privacy_report}
OrderedJson tandem_report(const TandemAnalysis& analysis,
                          const TandemSettings& settings,
                          const std::string& command, OrderedJson config);

std::string dump_report(const OrderedJson& report);

}  // namespace teval

#endif  // TEVAL_REPORT_HPP
