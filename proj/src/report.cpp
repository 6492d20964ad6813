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

#include "teval/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace teval {

OrderedJson json_number(real value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return std::strtod(buf, nullptr);
}

std::string_view to_string(PrivacyScope scope) {
  switch (scope) {
    case PrivacyScope::kSpoof: return "spoof";
    case PrivacyScope::kTarget: return "target";
    case PrivacyScope::kNonTarget: return "nontarget";
    case PrivacyScope::kAll: return "all";
  }
  return "?";
}

std::optional<PrivacyScope> parse_privacy_scope(std::string_view token) {
  for (auto s : {PrivacyScope::kSpoof, PrivacyScope::kTarget,
                 PrivacyScope::kNonTarget, PrivacyScope::kAll}) {
    if (token == to_string(s)) return s;
  }
  return std::nullopt;
}

TandemAnalysis analyze_tandem(const TrialTable& table,
                              const TandemSettings& settings) {
  settings.cost.validate();
  TandemAnalysis a;
  a.eer_cm = cm_eer(table);
  a.eer_asv = eer(table.asv_scores(TrialClass::kTarget),
                  table.asv_scores(TrialClass::kNonTarget));
  const real t_asv = settings.asv_threshold.value_or(a.eer_asv.threshold);
  a.asv = asv_rates(table, t_asv);
  a.coefficients = tdcf_coefficients(settings.cost, a.asv);
  a.curve = tdcf_curve(table.bona_fide_cm_scores(),
                       table.cm_scores(TrialClass::kSpoof), a.coefficients);
  a.min = min_tdcf(a.curve);
  a.privacy_cm_threshold = settings.cm_threshold.value_or(a.eer_cm.threshold);

  TrialTable population;
  switch (settings.privacy_scope) {
    case PrivacyScope::kSpoof:
      population = table.filter({TrialClass::kSpoof});
      break;
    case PrivacyScope::kTarget:
      population = table.filter({TrialClass::kTarget});
      break;
    case PrivacyScope::kNonTarget:
      population = table.filter({TrialClass::kNonTarget});
      break;
    case PrivacyScope::kAll:
      population = table;
      break;
  }
  a.privacy = privacy_report(population, a.privacy_cm_threshold, t_asv);
  return a;
}

OrderedJson cost_model_json(const CostModel& cost, bool is_default) {
  OrderedJson j;
  j["source"] = is_default ? "illustrative default" : "user-specified";
  j["c_miss"] = json_number(cost.c_miss);
  j["c_fa"] = json_number(cost.c_fa);
  j["c_fa_spoof"] = json_number(cost.c_fa_spoof);
  j["pi_tar"] = json_number(cost.pi_tar);
  j["pi_non"] = json_number(cost.pi_non);
  j["pi_spoof"] = json_number(cost.pi_spoof);
  return j;
}

OrderedJson eer_json(const EerResult& eer) {
  OrderedJson j;
  j["eer"] = json_number(eer.eer);
  j["threshold"] = json_number(eer.threshold);
  return j;
}

OrderedJson asv_operating_point_json(const AsvOperatingPoint& asv) {
  OrderedJson j;
  j["threshold"] = json_number(asv.threshold);
  j["p_miss"] = json_number(asv.p_miss);
  j["p_fa"] = json_number(asv.p_fa);
  j["p_fa_spoof"] = json_number(asv.p_fa_spoof);
  return j;
}

OrderedJson privacy_report_json(const PrivacyReport& report,
                                real cm_threshold, real asv_threshold,
                                PrivacyScope scope) {
  OrderedJson j;
  j["population"] = std::string(to_string(scope));
  j["trials"] = report.trials;
  j["cm_threshold"] = json_number(cm_threshold);
  j["asv_threshold"] = json_number(asv_threshold);
  j["accepted"] = json_number(report.accepted);
  j["rejected_by_asv"] = json_number(report.rejected_by_asv);
  j["rejected_by_cm"] = json_number(report.rejected_by_cm);
  return j;
}

OrderedJson zebra_json(const ZebraProfile& profile) {
  OrderedJson j;
  j["population_bits"] = json_number(profile.population_bits);
  j["worst_case_log10_odds"] = json_number(profile.worst_case_log10_odds);
  j["tag"] = std::string(to_string(profile.tag));
  return j;
}

OrderedJson report_header(const std::string& command, OrderedJson config) {
  OrderedJson j;
  j["format_version"] = kReportFormatVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

OrderedJson tandem_report(const TandemAnalysis& a,
                          const TandemSettings& settings,
                          const std::string& command, OrderedJson config) {
  OrderedJson j = report_header(command, std::move(config));
  j["cost_model"] = cost_model_json(settings.cost, settings.cost_is_default);
  j["asv_operating_point"] = asv_operating_point_json(a.asv);
  j["min_t_dcf"] = json_number(a.min.value);
  j["theta_star"] = json_number(a.min.theta_cm);
  j["eer_cm"] = eer_json(a.eer_cm);
  j["eer_asv"] = eer_json(a.eer_asv);
  j["privacy_report"] = privacy_report_json(
      a.privacy, a.privacy_cm_threshold, a.asv.threshold,
      settings.privacy_scope);
  return j;
}

std::string dump_report(const OrderedJson& report) {
  return report.dump(2) + "\n";
}

}  // namespace teval
