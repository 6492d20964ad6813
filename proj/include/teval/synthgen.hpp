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

#ifndef TEVAL_SYNTHGEN_HPP
#define TEVAL_SYNTHGEN_HPP

#include <array>
#include <cstdint>
#include <random>

#include "teval/score_io.hpp"
#include "teval/types.hpp"

namespace teval {

// Gaussian score source for one class and one subsystem.
struct ClassScoreSpec {
  real mu = 0.0;
  real sigma = 1.0;
  std::size_t n = 1;
};

struct SynthSpec {
  // Indexed by TrialClass.
  std::array<ClassScoreSpec, 3> cm;
  std::array<ClassScoreSpec, 3> asv;
  std::uint64_t seed = 0;

  // Throws Error(kDomain) unless every sigma > 0, n >= 1 and the cm/asv
  // counts agree per class.
  void validate() const;
};

/// Portable Gaussian sampler: std::mt19937_64 (bit-exact by the standard),
/// 53-bit uniforms and the Box-Muller transform. Implementation-defined
/// std::normal_distribution is deliberately not used.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0, 1).
  real uniform();
  real standard_normal();
  real normal(real mu, real sigma) { return mu + sigma * standard_normal(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  real spare_ = 0.0;
};

/// Rows are emitted class by class (target, nontarget, spoof); the CM score
/// of each trial is drawn before its ASV score. Ids are "syn-<class>-<i>".
TrialTable generate(const SynthSpec& spec);

// Standard normal CDF.
real normal_cdf(real x);

// EER of two equal-variance Gaussians: Phi(-(mu_pos - mu_neg) / (2 sigma)).
real analytic_eer(real mu_pos, real mu_neg, real sigma);

// Canonical score and key files for a table.
std::vector<ScoreRecord> cm_records(const TrialTable& table);
std::vector<ScoreRecord> asv_records(const TrialTable& table);
KeyMap key_map(const TrialTable& table);

}  // namespace teval

#endif  // TEVAL_SYNTHGEN_HPP
