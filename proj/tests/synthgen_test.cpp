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

#include <gtest/gtest.h>

#include "teval/detmetrics.hpp"
#include "teval/error.hpp"

namespace teval {
namespace {

SynthSpec small_spec(std::size_t n, std::uint64_t seed) {
  SynthSpec spec;
  spec.seed = seed;
  spec.cm = {{{2.0, 1.0, n}, {1.5, 0.5, n}, {-2.0, 2.0, n}}};
  spec.asv = {{{3.0, 1.0, n}, {-3.0, 1.5, n}, {1.0, 1.0, n}}};
  return spec;
}

TEST(SynthTest, Deterministic) {
  const auto a = generate(small_spec(50, 9));
  const auto b = generate(small_spec(50, 9));
  EXPECT_EQ(serialize_table(a), serialize_table(b));
  const auto c = generate(small_spec(50, 10));
  EXPECT_NE(serialize_table(a), serialize_table(c));
}

// Pins the generator's stream so fixtures stay stable across platforms.
TEST(SynthTest, UniformStream) {
  GaussianSource source(5489);
  // First output of mt19937_64 with the default seed is 14514284786278117030.
  const double expected = ((14514284786278117030ULL >> 11) + 0.5) * 0x1.0p-53;
  EXPECT_EQ(source.uniform(), expected);
  for (int i = 0; i < 1000; ++i) {
    const double u = source.uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(SynthTest, OneTrialPerClass) {
  const auto table = generate(small_spec(1, 3));
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table.num_target(), 1u);
  EXPECT_EQ(table.num_nontarget(), 1u);
  EXPECT_EQ(table.num_spoof(), 1u);
  for (const auto& row : table.rows()) {
    EXPECT_EQ(row.trial_id, "syn-" + std::string(to_string(row.trial_class)) + "-0");
  }
}

TEST(SynthTest, SampleMeansWithinStandardError) {
  const std::size_t n = 40000;
  const auto spec = small_spec(n, 11);
  const auto table = generate(spec);
  for (TrialClass c : kAllClasses) {
    const auto k = static_cast<std::size_t>(c);
    const double bound_cm = 4 * spec.cm[k].sigma / std::sqrt(double(n));
    const double bound_asv = 4 * spec.asv[k].sigma / std::sqrt(double(n));
    EXPECT_NEAR(table.cm_scores(c).mean(), spec.cm[k].mu, bound_cm);
    EXPECT_NEAR(table.asv_scores(c).mean(), spec.asv[k].mu, bound_asv);
    const auto cm = table.cm_scores(c);
    const double sd = std::sqrt((cm.array() - cm.mean()).square().sum() / (n - 1));
    EXPECT_NEAR(sd, spec.cm[k].sigma, 0.05 * spec.cm[k].sigma);
  }
}

TEST(SynthTest, AnalyticEer) {
  EXPECT_DOUBLE_EQ(analytic_eer(1.0, 1.0, 2.0), 0.5);
  EXPECT_NEAR(analytic_eer(2.0, 0.0, 1.0), 0.15865525393145707, 1e-12);
  EXPECT_NEAR(analytic_eer(6.0, 0.0, 1.0), 0.0013498980316300933, 1e-14);
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(normal_cdf(1.0) + normal_cdf(-1.0), 1.0, 1e-15);
  EXPECT_THROW(analytic_eer(0, 0, 0), Error);
}

TEST(SynthTest, MeasuredEerApproachesAnalytic) {
  SynthSpec spec;
  spec.seed = 2024;
  const std::size_t n = 100000;
  spec.cm = {{{1.0, 1.0, n}, {1.0, 1.0, n}, {-1.0, 1.0, n}}};
  spec.asv = {{{1.0, 1.0, n}, {-1.0, 1.0, n}, {0.0, 1.0, n}}};
  const auto table = generate(spec);
  const auto measured =
      eer(table.asv_scores(TrialClass::kTarget), table.asv_scores(TrialClass::kNonTarget));
  EXPECT_NEAR(measured.eer, analytic_eer(1.0, -1.0, 1.0), 0.005);
  EXPECT_LE(measured.eer, 0.5);
}

TEST(SynthTest, Validation) {
  auto spec = small_spec(10, 0);
  spec.cm[0].sigma = 0;
  EXPECT_THROW(spec.validate(), Error);
  spec = small_spec(10, 0);
  spec.asv[2].n = 11;
  EXPECT_THROW(generate(spec), Error);
  spec = small_spec(10, 0);
  spec.cm[1].n = 0, spec.asv[1].n = 0;
  EXPECT_THROW(generate(spec), Error);
}

TEST(SynthTest, RecordsRoundTripThroughJoin) {
  const auto table = generate(small_spec(20, 4));
  const auto rejoined = join(cm_records(table), asv_records(table), key_map(table));
  EXPECT_EQ(rejoined.size(), table.size());
  EXPECT_EQ(serialize_table(rejoined).size(), serialize_table(table).size());
  EXPECT_EQ(rejoined.cm_scores(TrialClass::kSpoof).sum(),
            table.cm_scores(TrialClass::kSpoof).sum());
}

}  // namespace
}  // namespace teval
