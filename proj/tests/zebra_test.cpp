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

#include "teval/zebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "teval/error.hpp"
#include "test_util.hpp"

namespace teval {
namespace {

using testing::vec;

// Smoothed isotonic LLRs via the max-min formula over tie groups, written
// independently of the stack-based PAV in the library.
std::vector<double> oracle_llrs(const VectorXr& tar, const VectorXr& non) {
  const double nt = tar.size(), nn = non.size(), n = nt + nn;
  const double eps = 1.0 / n;
  struct Group { double score, t, w; };
  std::vector<Group> groups;
  groups.push_back({-INFINITY, 2 * eps * nt / n, 2 * eps * nt / n});
  std::vector<std::pair<double, int>> pooled;
  for (double s : tar) pooled.push_back({s, 1});
  for (double s : non) pooled.push_back({s, 0});
  std::sort(pooled.begin(), pooled.end());
  for (auto [s, is_tar] : pooled) {
    if (groups.back().score != s) groups.push_back({s, 0, 0});
    groups.back().t += is_tar;
    groups.back().w += 1;
  }
  groups.push_back({INFINITY, 0, 2 * eps * nn / n});

  const std::size_t g = groups.size();
  std::vector<double> llr_of_group(g);
  for (std::size_t i = 0; i < g; ++i) {
    double best = -INFINITY;
    for (std::size_t j = 0; j <= i; ++j) {
      double worst = INFINITY;
      for (std::size_t k = i; k < g; ++k) {
        double t = 0, w = 0;
        for (std::size_t m = j; m <= k; ++m) t += groups[m].t, w += groups[m].w;
        worst = std::min(worst, t / w);
      }
      best = std::max(best, worst);
    }
    const double llr = std::log(best / (1 - best)) - std::log(nt / nn);
    llr_of_group[i] = std::clamp(llr, -30.0, 30.0);
  }
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < g; ++i) {
    for (int c = 0; c < groups[i].w; ++c) out.push_back(llr_of_group[i]);
  }
  return out;
}

TEST(ZebraTagTest, TableBoundaries) {
  const std::vector<std::pair<double, ZebraTag>> cases = {
      {1.0, ZebraTag::k0}, {10.0, ZebraTag::kB}, {1e2, ZebraTag::kC},
      {1e3, ZebraTag::kC}, {1e4, ZebraTag::kD}, {1e5, ZebraTag::kE},
      {1e6, ZebraTag::kF}};
  for (auto [r, expected] : cases) {
    EXPECT_EQ(tag_from_odds(r), expected) << r;
  }
  EXPECT_EQ(tag_from_odds(1.5), ZebraTag::kA);
  EXPECT_EQ(tag_from_odds(9.999), ZebraTag::kA);
  EXPECT_EQ(tag_from_odds(1e9), ZebraTag::kF);
  EXPECT_EQ(tag_from_odds(1.0 + 1e-10), ZebraTag::k0);
  EXPECT_EQ(tag(0.0), ZebraTag::k0);
  EXPECT_EQ(tag(3.0), ZebraTag::kC);
  EXPECT_EQ(tag(6.0), ZebraTag::kF);
}

TEST(ZebraTagTest, BelowEvenIsDomainError) {
  try {
    tag_from_odds(0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kDomain);
  }
  EXPECT_THROW(tag_from_odds(NAN), Error);
}

TEST(ZebraTest, ZeroInformationInput) {
  for (auto [nt, nn] : {std::pair{5, 5}, std::pair{3, 7}}) {
    const auto tar = VectorXr::Constant(nt, 0.7);
    const auto non = VectorXr::Constant(nn, 0.7);
    const auto p = zebra_profile(tar, non);
    EXPECT_NEAR(p.population_bits, 0.0, 1e-12);
    EXPECT_NEAR(p.worst_case_log10_odds, 0.0, 1e-12);
    EXPECT_EQ(p.tag, ZebraTag::k0);
  }
}

TEST(ZebraTest, EmptyClass) {
  try {
    population_disclosure(vec({}), vec({1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kEmptyClass);
  }
  EXPECT_THROW(worst_case(vec({1.0}), vec({})), Error);
}

TEST(ZebraTest, GridRefinementOracle) {
  const auto tar = vec({0.3, 1.2, 2.0, -0.4, 1.7});
  const auto non = vec({-1.0, 0.5, -2.2, -0.1, 0.9});
  const LlrSet calibrated = calibrated_llrs(tar, non);
  // Trapezoid rule with a step ten times finer.
  const int steps = 20000;
  const double h = 20.0 / steps;
  double integral = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double beta = -10.0 + k * h;
    const double gap = binary_entropy(sigmoid(beta)) - ece(calibrated, beta);
    integral += (k == 0 || k == steps) ? gap / 2 : gap;
  }
  const double reference = integral * h / 20.0;
  EXPECT_NEAR(population_disclosure(tar, non), reference, 1e-3);
  EXPECT_GT(reference, 0.0);
}

TEST(ZebraTest, WorstCaseMatchesSecondPav) {
  const VectorXr tar = vec({0.1, 2.5, 1.0});
  const VectorXr non = vec({-0.7, 0.4, -1.9});
  const auto llrs = oracle_llrs(tar, non);
  double max_abs = 0;
  for (double v : llrs) max_abs = std::max(max_abs, std::abs(v));
  EXPECT_NEAR(worst_case(tar, non), max_abs / std::log(10.0), 1e-12);
}

TEST(ZebraTest, CalibratedLlrsMatchSecondPavOnRandomSets) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 300; ++round) {
    const int nt = 1 + round % 6, nn = 1 + (round / 6) % 6;
    auto tar = testing::integer_grid(rng, nt, -4, 4);
    auto non = testing::integer_grid(rng, nn, -4, 4);
    const auto expected = oracle_llrs(tar, non);
    const LlrSet got = calibrated_llrs(tar, non);
    // Oracle emits LLRs in pooled score order; compare as sorted multisets.
    std::vector<double> flat(got.tar.data(), got.tar.data() + got.tar.size());
    flat.insert(flat.end(), got.non.data(), got.non.data() + got.non.size());
    std::sort(flat.begin(), flat.end());
    auto sorted_expected = expected;
    std::sort(sorted_expected.begin(), sorted_expected.end());
    ASSERT_EQ(flat.size(), sorted_expected.size());
    for (std::size_t i = 0; i < flat.size(); ++i) {
      EXPECT_NEAR(flat[i], sorted_expected[i], 1e-9) << "round " << round;
    }
  }
}

TEST(ZebraTest, WorstCaseBoundedByClamp) {
  const auto p = zebra_profile(vec({100, 200, 300}), vec({-300, -200, -100}));
  EXPECT_GE(p.worst_case_log10_odds, 0.0);
  EXPECT_LE(p.worst_case_log10_odds, 30.0 / std::log(10.0) + 1e-12);
}

TEST(ZebraTest, PopulationNonNegativeBeforeClamp) {
  std::mt19937_64 rng(32);
  ZebraOptions raw;
  raw.clamp_negative = false;
  raw.step = 0.05;
  for (int round = 0; round < 100; ++round) {
    auto tar = testing::gaussian(rng, 1 + round % 9, 0.3 * (round % 4), 1.0);
    auto non = testing::gaussian(rng, 1 + round % 7, 0.0, 1.0);
    EXPECT_GE(population_disclosure(tar, non, raw), -1e-9);
  }
}

TEST(ZebraTest, GrowsWithSeparation) {
  std::mt19937_64 rng(33);
  const auto base_t = testing::gaussian(rng, 200, 0.0, 1.0);
  const auto base_n = testing::gaussian(rng, 200, 0.0, 1.0);
  double previous = -1.0;
  for (double shift : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    VectorXr tar = base_t.array() + shift;
    const double bits = population_disclosure(tar, base_n);
    EXPECT_GT(bits, previous) << shift;
    previous = bits;
  }
  const auto strong = zebra_profile(vec({10, 20, 30, 40}), vec({-40, -30, -20, -10}));
  EXPECT_GT(strong.population_bits, 0.0);
  EXPECT_GE(static_cast<int>(strong.tag), static_cast<int>(ZebraTag::kA));
}

TEST(ZebraTest, StronglySeparatedLargeSetReachesC) {
  std::mt19937_64 rng(34);
  const auto tar = testing::gaussian(rng, 500, 8.0, 1.0);
  const auto non = testing::gaussian(rng, 500, -8.0, 1.0);
  const auto p = zebra_profile(tar, non);
  EXPECT_GE(static_cast<int>(p.tag), static_cast<int>(ZebraTag::kC));
}

TEST(ZebraTest, MonotoneInvariance) {
  std::mt19937_64 rng(35);
  for (int round = 0; round < 20; ++round) {
    auto tar = testing::integer_grid(rng, 8, -5, 5);
    auto non = testing::integer_grid(rng, 9, -5, 5);
    auto warp = [](const VectorXr& v) -> VectorXr {
      return v.unaryExpr([](double x) { return std::exp(x / 2) + 3 * x; });
    };
    const auto a = zebra_profile(tar, non);
    const auto b = zebra_profile(warp(tar), warp(non));
    EXPECT_NEAR(a.population_bits, b.population_bits, 1e-9);
    EXPECT_NEAR(a.worst_case_log10_odds, b.worst_case_log10_odds, 1e-9);
    EXPECT_EQ(a.tag, b.tag);
  }
}

TEST(ZebraTest, ComponentsCompose) {
  const auto tar = vec({0.3, 1.2, 2.0, -0.4, 1.7});
  const auto non = vec({-1.0, 0.5, -2.2, -0.1, 0.9});
  const auto p = zebra_profile(tar, non);
  EXPECT_EQ(p.population_bits, population_disclosure(tar, non));
  EXPECT_EQ(p.worst_case_log10_odds, worst_case(tar, non));
  EXPECT_EQ(p.tag, tag(p.worst_case_log10_odds));
}

TEST(ZebraTest, Rendering) {
  ZebraProfile p{0.0123456, 1.5, ZebraTag::kB};
  EXPECT_EQ(render_profile("P1", p), "P1 (0.012 bits, 1.500 log10 odds, B)");
}

}  // namespace
}  // namespace teval
