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

#include "teval/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "teval/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace teval {
namespace {

using testing::Block;
using testing::brute_force_isotonic;
using testing::vec;

// --- Independent oracles -------------------------------------------------

// Minimises a convex function on [lo, hi] by golden-section search.
double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) <= f(d)) b = d; else a = c;
  }
  return f((a + b) / 2);
}

// Minimum Cllr over all non-decreasing LLR assignments to the sorted,
// distinct scores (each with a count of targets and nontargets), LLRs
// restricted to [-30, 30].
double brute_force_cllr_min(const std::vector<std::pair<int, int>>& counts,
                            int n_tar, int n_non) {
  const int k = static_cast<int>(counts.size());
  double best = INFINITY;
  for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
    double total = 0.0;
    double prev_llr = -INFINITY;
    bool monotone = true;
    int start = 0;
    for (int i = 0; i < k; ++i) {
      if (!(i == k - 1 || (mask >> i) & 1u)) continue;
      int t = 0, n = 0;
      for (int j = start; j <= i; ++j) t += counts[j].first, n += counts[j].second;
      auto seg = [&](double l) {
        return 0.5 * (t * std::log2(1 + std::exp(-l)) / n_tar +
                      n * std::log2(1 + std::exp(l)) / n_non);
      };
      // Optimal LLR of the segment, located on a fine grid first.
      double arg = -30, val = INFINITY;
      for (double l = -30; l <= 30; l += 0.01) {
        if (seg(l) < val) val = seg(l), arg = l;
      }
      if (arg < prev_llr - 0.02) monotone = false;
      prev_llr = arg;
      total += golden_min(seg, std::max(-30.0, arg - 0.02), std::min(30.0, arg + 0.02));
      start = i + 1;
    }
    if (monotone) best = std::min(best, total);
  }
  return best;
}

// --- cllr / ece ------------------------------------------------------------

TEST(CllrTest, Examples) {
  EXPECT_EQ(cllr(vec({0}), vec({0})), 1.0);
  EXPECT_LT(cllr(vec({50}), vec({-50})), 1e-12);
  EXPECT_NEAR(cllr(vec({std::log(3.0)}), vec({-std::log(3.0)})),
              0.41503749927884376, 1e-14);
}

TEST(CllrTest, EmptyClass) {
  try {
    cllr(VectorXr(0), vec({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kEmptyClass);
  }
  EXPECT_THROW(pav_calibrate(vec({1}), VectorXr(0)), Error);
  EXPECT_THROW(ece(VectorXr(0), vec({1}), 0.0), Error);
}

TEST(CllrTest, ExtremeLlrsStayFinite) {
  EXPECT_TRUE(std::isfinite(cllr(vec({-800}), vec({800}))));
  EXPECT_NEAR(cllr(vec({-800}), vec({800})), 800 / std::log(2.0), 1e-9);
}

TEST(EceTest, AtZeroIsCllr) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 100; ++round) {
    LlrSet s{testing::gaussian(rng, 20, 1.0, 2.0), testing::gaussian(rng, 30, -1.0, 2.0)};
    EXPECT_NEAR(ece(s, 0.0), cllr(s), 1e-12);
  }
}

TEST(EceTest, ZeroLlrsGivePriorEntropy) {
  for (double beta : {-7.0, -2.5, 0.0, 0.3, 4.0, 9.9}) {
    EXPECT_NEAR(ece(vec({0}), vec({0}), beta), binary_entropy(sigmoid(beta)), 1e-12);
  }
}

TEST(EceTest, HandValue) {
  EXPECT_NEAR(ece(vec({1}), vec({-1}), 1.0), 0.4028117074273503, 1e-14);
}

TEST(EceTest, NonFiniteBeta) {
  EXPECT_THROW(ece(vec({1}), vec({-1}), INFINITY), Error);
}

// --- PAV -----------------------------------------------------------------

TEST(PavTest, AlreadyIsotonic) {
  auto map = pav_calibrate(vec({2}), vec({1}));
  ASSERT_EQ(map.num_segments(), 2u);
  EXPECT_LT(map.llr_values[0], map.llr_values[1]);
  EXPECT_GT(map.apply(2.0), map.apply(1.0));
}

TEST(PavTest, InvertedPoolsToOneSegment) {
  auto map = pav_calibrate(vec({1}), vec({2}));
  ASSERT_EQ(map.num_segments(), 1u);
  EXPECT_EQ(map.apply(1.0), map.apply(2.0));
}

TEST(PavTest, SmoothingKeepsLlrsFinite) {
  auto map = pav_calibrate(vec({10, 20}), vec({-20, -10}));
  for (double l : map.llr_values) {
    EXPECT_TRUE(std::isfinite(l));
    EXPECT_LT(std::abs(l), kLlrClamp);
  }
  auto raw = pav_calibrate(vec({10, 20}), vec({-20, -10}), PavOptions::unsmoothed());
  EXPECT_EQ(raw.llr_values.front(), -kLlrClamp);
  EXPECT_EQ(raw.llr_values.back(), kLlrClamp);
}

TEST(PavTest, TiesShareASegment) {
  auto map = pav_calibrate(vec({1, 1, 3}), vec({1, 0}), PavOptions::unsmoothed());
  const VectorXr llr = map.apply(vec({1, 1, 3, 1, 0}));
  EXPECT_EQ(llr[0], llr[3]);
}

TEST(PavTest, SegmentPosteriorIsTargetFraction) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 50; ++round) {
    VectorXr tar = testing::integer_grid(rng, 15, -3, 6).cast<double>();
    VectorXr non = testing::integer_grid(rng, 15, -6, 3).cast<double>();
    for (auto options : {PavOptions::unsmoothed(), PavOptions{}}) {
      auto map = pav_calibrate(tar, non, options);
      const double eps = options.epsilon.value_or(1.0 / 30);
      // Count the trials falling into each segment directly.
      std::vector<double> t(map.num_segments(), 0.0), w(map.num_segments(), 0.0);
      auto seg = [&](double s) {
        std::size_t k = 0;
        while (k + 1 < map.breakpoints.size() && map.breakpoints[k + 1] <= s) ++k;
        return k;
      };
      for (double s : tar) t[seg(s)] += 1, w[seg(s)] += 1;
      for (double s : non) w[seg(s)] += 1;
      t.front() += eps, w.front() += eps;  // virtual target, balanced classes
      w.back() += eps;                     // virtual nontarget
      for (std::size_t k = 0; k < map.num_segments(); ++k) {
        EXPECT_NEAR(map.posterior(k), t[k] / w[k], 1e-12);
        if (k > 0) EXPECT_GT(map.llr_values[k], map.llr_values[k - 1]);
      }
    }
  }
}

// Every instance with up to 8 points: all ways of grouping sorted points into
// tie groups, times all label assignments with both classes present.
TEST(PavTest, MatchesExhaustiveIsotonicOracle) {
  int instances = 0;
  for (int n = 2; n <= 8; ++n) {
    for (unsigned ties = 0; ties < (1u << (n - 1)); ++ties) {
      // Bit i set: point i+1 shares point i's score.
      std::vector<double> score(n);
      for (int i = 1; i < n; ++i) score[i] = score[i - 1] + (((ties >> (i - 1)) & 1u) ? 0 : 1);
      for (unsigned labels = 1; labels + 1 < (1u << n); ++labels) {
        std::vector<double> tar, non;
        for (int i = 0; i < n; ++i) ((labels >> i) & 1u ? tar : non).push_back(score[i]);
        VectorXr t = as_vector(tar), u = as_vector(non);

        // Oracle blocks: one per distinct score.
        std::vector<Block> blocks;
        for (int i = 0; i < n; ++i) {
          if (i == 0 || score[i] != score[i - 1]) blocks.push_back({0, 0});
          blocks.back().weight += 1;
          blocks.back().target_weight += (labels >> i) & 1u;
        }
        const auto fit = brute_force_isotonic(blocks);
        auto map = pav_calibrate(t, u, PavOptions::unsmoothed());
        int b = -1;
        for (int i = 0; i < n; ++i) {
          if (i == 0 || score[i] != score[i - 1]) ++b;
          const double s = score[i];
          std::size_t k = 0;
          while (k + 1 < map.breakpoints.size() && map.breakpoints[k + 1] <= s) ++k;
          ASSERT_NEAR(map.posterior(k), fit[b], 1e-12)
              << "n=" << n << " ties=" << ties << " labels=" << labels;
        }
        ++instances;
      }
    }
  }
  EXPECT_GT(instances, 30000);
}

TEST(PavTest, SmoothedMatchesOracleWithVirtualTrials) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 200; ++round) {
    VectorXr tar = testing::integer_grid(rng, 3, 0, 4);
    VectorXr non = testing::integer_grid(rng, 3, -1, 3);
    const double eps = 1.0 / 6;
    auto map = pav_calibrate(tar, non);
    std::vector<Block> blocks{{eps, eps}};
    std::vector<double> distinct;
    for (double s : tar) distinct.push_back(s);
    for (double s : non) distinct.push_back(s);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (double v : distinct) {
      Block blk{0, 0};
      for (double s : tar) if (s == v) blk.target_weight += 1, blk.weight += 1;
      for (double s : non) if (s == v) blk.weight += 1;
      blocks.push_back(blk);
    }
    blocks.push_back({0, eps});
    const auto fit = brute_force_isotonic(blocks);
    const double prior = std::log(1.0);  // balanced
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      const double p = fit[i + 1];
      EXPECT_NEAR(map.apply(distinct[i]), std::log(p / (1 - p)) - prior, 1e-9);
    }
  }
}

// Least squares on 20 + 20 random scores is no worse than any monotone step
// function on the same breakpoints, here perturbations of the PAV solution.
TEST(PavTest, NoMonotonePerturbationImproves) {
  std::mt19937_64 rng(6);
  VectorXr tar = testing::gaussian(rng, 20, 1.0, 1.0);
  VectorXr non = testing::gaussian(rng, 20, 0.0, 1.0);
  auto map = pav_calibrate(tar, non, PavOptions::unsmoothed());
  auto sse = [&](const std::vector<double>& p) {
    double total = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double t = map.target_weight[k], w = map.total_weight[k];
      total += t * (1 - p[k]) * (1 - p[k]) + (w - t) * p[k] * p[k];
    }
    return total;
  };
  std::vector<double> base(map.num_segments());
  for (std::size_t k = 0; k < base.size(); ++k) base[k] = map.posterior(k);
  const double best = sse(base);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  for (int trial = 0; trial < 2000; ++trial) {
    auto p = base;
    for (double& v : p) v = std::clamp(v + jitter(rng), 0.0, 1.0);
    std::sort(p.begin(), p.end());
    EXPECT_GE(sse(p), best - 1e-12);
  }
}

// --- cllr_min ----------------------------------------------------------------

TEST(CllrMinTest, Separable) {
  EXPECT_LT(cllr_min(vec({10, 20}), vec({-20, -10})), 0.02);
}

TEST(CllrMinTest, IdenticalClassesGiveOneBit) {
  EXPECT_NEAR(cllr_min(vec({0, 1, 2}), vec({0, 1, 2})), 1.0, 1e-12);
  EXPECT_NEAR(cllr_min(vec({3, 3}), vec({3, 3})), 1.0, 1e-12);
}

TEST(CllrMinTest, MatchesBruteForceAssignment) {
  // tar = [0, 2], non = [-1, 1]: sorted -1(n), 0(t), 1(n), 2(t).
  const double oracle = brute_force_cllr_min({{0, 1}, {1, 0}, {0, 1}, {1, 0}}, 2, 2);
  EXPECT_NEAR(cllr_min(vec({0, 2}), vec({-1, 1})), oracle, 1e-9);
  EXPECT_NEAR(oracle, 0.5, 1e-9);
}

TEST(CllrMinTest, MatchesBruteForceOnRandomSmallSets) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(1, 4);
  for (int round = 0; round < 40; ++round) {
    VectorXr tar = testing::integer_grid(rng, size(rng), -2, 3);
    VectorXr non = testing::integer_grid(rng, size(rng), -3, 2);
    std::vector<std::pair<int, int>> counts;
    for (int v = -3; v <= 3; ++v) {
      int t = (tar.array() == v).count(), n = (non.array() == v).count();
      if (t + n) counts.emplace_back(t, n);
    }
    const double oracle = brute_force_cllr_min(counts, tar.size(), non.size());
    EXPECT_NEAR(cllr_min(tar, non), oracle, 1e-9);
  }
}

TEST(CllrMinTest, NotAboveCllrForLlrInputs) {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 100; ++round) {
    const double sep = 0.5 * (round % 8);
    VectorXr tar = testing::gaussian(rng, 30, sep, 1.0 + 0.1 * (round % 5));
    VectorXr non = testing::gaussian(rng, 40, -sep, 1.0);
    EXPECT_LE(cllr_min(tar, non), cllr(tar, non) + 1e-12);
    EXPECT_GE(cllr_min(tar, non), 0.0);
  }
  EXPECT_LE(cllr_min(vec({50}), vec({-50})), cllr(vec({50}), vec({-50})) + 1e-12);
}

TEST(CllrMinTest, InvariantUnderIncreasingTransforms) {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 30; ++round) {
    VectorXr tar = testing::gaussian(rng, 25, 1.0, 1.0);
    VectorXr non = testing::gaussian(rng, 25, 0.0, 1.0);
    const double base = cllr_min(tar, non);
    VectorXr t2 = tar.array().exp(), n2 = non.array().exp();
    EXPECT_NEAR(cllr_min(t2, n2), base, 1e-9);
    VectorXr t3 = (3 * tar.array().cube() + 2).matrix(), n3 = (3 * non.array().cube() + 2).matrix();
    EXPECT_NEAR(cllr_min(t3, n3), base, 1e-9);
  }
}

TEST(CllrMinTest, RecalibrationIsIdempotent) {
  std::mt19937_64 rng(15);
  for (int round = 0; round < 30; ++round) {
    VectorXr tar = testing::gaussian(rng, 25, 1.0, 1.0);
    VectorXr non = testing::gaussian(rng, 25, 0.0, 1.0);
    for (auto options : {PavOptions::unsmoothed(), PavOptions{}}) {
      const LlrSet once = calibrated_llrs(tar, non, options);
      EXPECT_NEAR(cllr_min(once.tar, once.non, options), cllr_min(tar, non, options), 1e-9);
    }
  }
}

TEST(EceCurveTest, CsvAndEndpoints) {
  auto curve = ece_curve(vec({1, 2}), vec({-1, 0}), 1.0, 0.5);
  ASSERT_EQ(curve.size(), 5u);
  EXPECT_EQ(curve.front().beta, -1.0);
  EXPECT_EQ(curve.back().beta, 1.0);
  EXPECT_NEAR(curve[2].raw, cllr(vec({1, 2}), vec({-1, 0})), 1e-12);
  const auto csv = ece_curve_csv(curve);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "beta,ece_raw,ece_calibrated,ece_default");
}

}  // namespace
}  // namespace teval
