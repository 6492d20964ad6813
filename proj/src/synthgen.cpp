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

#include "teval/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "teval/error.hpp"

namespace teval {

void SynthSpec::validate() const {
  for (TrialClass c : kAllClasses) {
    const auto k = static_cast<std::size_t>(c);
    for (const ClassScoreSpec* s : {&cm[k], &asv[k]}) {
      if (!(s->sigma > 0) || !std::isfinite(s->mu) || s->n < 1) {
        throw Error(ErrorCategory::kDomain,
                    "invalid synth spec for class " +
                        std::string(to_string(c)) +
                        " (need sigma > 0, finite mu, n >= 1)");
      }
    }
    if (cm[k].n != asv[k].n) {
      throw Error(ErrorCategory::kDomain,
                  "cm and asv trial counts differ for class " +
                      std::string(to_string(c)));
    }
  }
}

real GaussianSource::uniform() {
  // 53 random bits mapped to the open interval (0, 1).
  return (static_cast<real>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

real GaussianSource::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const real u1 = uniform();
  const real u2 = uniform();
  const real radius = std::sqrt(-2.0 * std::log(u1));
  const real angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

TrialTable generate(const SynthSpec& spec) {
  spec.validate();
  GaussianSource rng(spec.seed);
  std::vector<TrialRow> rows;
  for (TrialClass c : kAllClasses) {
    const auto k = static_cast<std::size_t>(c);
    const std::string prefix = "syn-" + std::string(to_string(c)) + "-";
    for (std::size_t i = 0; i < spec.cm[k].n; ++i) {
      TrialRow row;
      row.trial_id = prefix + std::to_string(i);
      row.trial_class = c;
      row.cm_score = rng.normal(spec.cm[k].mu, spec.cm[k].sigma);
      row.asv_score = rng.normal(spec.asv[k].mu, spec.asv[k].sigma);
      rows.push_back(std::move(row));
    }
  }
  return TrialTable(std::move(rows));
}

real normal_cdf(real x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

real analytic_eer(real mu_pos, real mu_neg, real sigma) {
  if (!(sigma > 0)) throw Error(ErrorCategory::kDomain, "sigma must be > 0");
  return normal_cdf(-(mu_pos - mu_neg) / (2.0 * sigma));
}

std::vector<ScoreRecord> cm_records(const TrialTable& table) {
  std::vector<ScoreRecord> out;
  out.reserve(table.size());
  for (const auto& row : table.rows()) out.push_back({row.trial_id, row.cm_score});
  return out;
}

std::vector<ScoreRecord> asv_records(const TrialTable& table) {
  std::vector<ScoreRecord> out;
  out.reserve(table.size());
  for (const auto& row : table.rows()) out.push_back({row.trial_id, row.asv_score});
  return out;
}

KeyMap key_map(const TrialTable& table) {
  KeyMap keys;
  for (const auto& row : table.rows()) keys.emplace(row.trial_id, row.trial_class);
  return keys;
}

}  // namespace teval
