/* Copyright 2026 The monopmf Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "core/errors.hpp"
#include "core/estimators.hpp"
#include "core/limit_sim.hpp"
#include "core/metrics.hpp"
#include "core/pmf.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

namespace monopmf {
namespace {

double Sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(DrawLimit, Deterministic) {
  const auto p = uniform_pmf(5);
  const auto a = draw_limit(p, 17), b = draw_limit(p, 17), c = draw_limit(p, 18);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.y_gren, b.y_gren);
  EXPECT_NE(a.y, c.y);
}

TEST(DrawLimit, SumsToZeroAndRejectsNonMonotone) {
  const auto p = mixture_of_uniforms(std::vector<double>{0.2, 0.8}, std::vector<std::size_t>{3, 7});
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto d = draw_limit(p, s);
    EXPECT_NEAR(Sum(d.y), 0.0, 1e-12);
    EXPECT_NEAR(Sum(d.y_rear), 0.0, 1e-12);
    EXPECT_NEAR(Sum(d.y_gren), 0.0, 1e-12);
  }
  EXPECT_THROW(draw_limit(Pmf::from_probs({0.2, 0.8}, false), 1), DomainError);
}

TEST(DrawLimit, MomentsMatchMultinomialCovariance) {
  const auto p = Pmf::from_probs({0.5, 0.3, 0.2}, true);
  const std::size_t draws = 100000;
  std::vector<double> sum(3, 0.0), sq(3, 0.0);
  double cross01 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto d = draw_limit(p, derive_seed(77, i));
    for (std::size_t x = 0; x < 3; ++x) {
      sum[x] += d.y[x];
      sq[x] += d.y[x] * d.y[x];
    }
    cross01 += d.y[0] * d.y[1];
  }
  const double n = static_cast<double>(draws);
  for (std::size_t x = 0; x < 3; ++x) {
    const double var = p[x] * (1 - p[x]);
    EXPECT_NEAR(sum[x] / n, 0.0, 5 * std::sqrt(var / n));
    // Var(Y^2) = 2 var^2 for a centred Gaussian.
    EXPECT_NEAR(sq[x] / n, var, 5 * std::sqrt(2 * var * var / n));
  }
  const double cov = -p[0] * p[1];
  const double sd = std::sqrt((p[0] * (1 - p[0]) * p[1] * (1 - p[1]) + cov * cov) / n);
  EXPECT_NEAR(cross01 / n, cov, 5 * sd);
}

TEST(DrawLimit, StrictlyDecreasingTruthLeavesYUnchanged) {
  const auto p = Pmf::from_probs({0.5, 0.3, 0.2}, true);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto d = draw_limit(p, s);
    EXPECT_EQ(d.y, d.y_rear);
    EXPECT_EQ(d.y, d.y_gren);
  }
}

TEST(DrawLimit, TransformsMatchOracleWithinBlocks) {
  const auto p = mixture_of_uniforms(std::vector<double>{0.2, 0.8}, std::vector<std::size_t>{3, 7});
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto d = draw_limit(p, s);
    const std::vector<double> lo(d.y.begin(), d.y.begin() + 4), hi(d.y.begin() + 4, d.y.end());
    const auto glo = oracle::gren_oracle(lo), ghi = oracle::gren_oracle(hi);
    for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR(d.y_gren[x], glo[x], 1e-12);
    for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR(d.y_gren[x + 4], ghi[x], 1e-12);
  }
}

TEST(DrawLimit, PerDrawNormInequalities) {
  const auto p = mixture_of_uniforms(std::vector<double>{0.25, 0.2, 0.15, 0.4},
                                     std::vector<std::size_t>{1, 3, 5, 7});
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const auto d = draw_limit(p, s);
    for (double k : {1.0, 2.0, 3.0}) {
      const std::vector<double> zero(d.y.size(), 0.0);
      const double base = ell_power_loss(d.y, zero, k);
      EXPECT_LE(ell_power_loss(d.y_rear, zero, k), base + 1e-12);
      EXPECT_LE(ell_power_loss(d.y_gren, zero, k), base + 1e-12);
    }
  }
}

TEST(Asymptotics, UniformClosedForms) {
  const auto a = asymptotics(uniform_pmf(5));
  EXPECT_NEAR(a.e_sq_l2_emp, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(a.e_sq_l2_gren, (oracle::harmonic(6) - 1.0) / 6.0, 1e-12);
  EXPECT_NEAR(a.e_sq_l2_gren, 0.2416667, 1e-7);
  EXPECT_EQ(a.kappa, 5u);
  EXPECT_DOUBLE_EQ(a.e_hell_emp, 5.0);
  EXPECT_NEAR(a.e_hell_gren, oracle::harmonic(6) - 1.0, 1e-12);
  EXPECT_NEAR(a.e_l1_emp, std::sqrt(2 / M_PI) * 6 * std::sqrt(5.0 / 36.0), 1e-12);
  ASSERT_EQ(a.levels.size(), 1u);
  EXPECT_EQ(a.levels[0].length, 6u);
}

TEST(Asymptotics, StrictlyDecreasingHasNoGap) {
  const auto a = asymptotics(Pmf::from_probs({0.5, 0.3, 0.2}, true));
  EXPECT_NEAR(a.e_sq_l2_emp, 0.62, 1e-12);
  EXPECT_NEAR(a.e_sq_l2_gren, 0.62, 1e-12);
  EXPECT_NEAR(a.l2_gap(), 0.0, 1e-12);
  EXPECT_NEAR(a.hellinger_gap(), 0.0, 1e-12);
  EXPECT_EQ(a.kappa, 2u);
}

TEST(Asymptotics, GapIsSumOverBlocks) {
  const auto p = mixture_of_uniforms(std::vector<double>{0.2, 0.8}, std::vector<std::size_t>{3, 7});
  const auto a = asymptotics(p);
  ASSERT_EQ(a.levels.size(), 2u);
  double gap = 0.0, hgap = 0.0;
  for (const auto& lv : a.levels) {
    const double t = static_cast<double>(lv.length);
    gap += lv.theta * (t - oracle::harmonic(lv.length));
    hgap += t - oracle::harmonic(lv.length);
  }
  EXPECT_NEAR(a.l2_gap(), gap, 1e-12);
  EXPECT_NEAR(a.hellinger_gap(), hgap, 1e-12);
}

TEST(Asymptotics, MonteCarloAgreesWithClosedForms) {
  const auto p = mixture_of_uniforms(std::vector<double>{0.2, 0.8}, std::vector<std::size_t>{3, 7});
  const auto a = asymptotics(p);
  const auto s = simulate_limits(p, 40000, 3);
  const auto l2y = oracle::mean_se(s.sq_l2_y), l2g = oracle::mean_se(s.sq_l2_gren);
  const auto cy = oracle::mean_se(s.chi_y), cg = oracle::mean_se(s.chi_gren);
  EXPECT_NEAR(l2y.mean, a.e_sq_l2_emp, 4 * l2y.se);
  EXPECT_NEAR(l2g.mean, a.e_sq_l2_gren, 4 * l2g.se);
  EXPECT_NEAR(cy.mean, a.e_hell_emp, 4 * cy.se);
  EXPECT_NEAR(cg.mean, a.e_hell_gren, 4 * cg.se);
}

TEST(Asymptotics, ChiSquaredStatisticDistribution) {
  const auto p = geometric_pmf(0.6, 1e-6);
  const auto s = simulate_limits(p, 20000, 11);
  const double dof = static_cast<double>(asymptotics(p).kappa);
  const double d = oracle::ks_one_sample(s.chi_y, [&](double x) { return oracle::chi_squared_cdf(x, dof); });
  EXPECT_LT(d, oracle::ks_one_sample_critical(0.001, s.chi_y.size()));
}

TEST(Asymptotics, RejectsNonMonotone) {
  EXPECT_THROW(asymptotics(Pmf::from_probs({0.2, 0.8}, false)), DomainError);
}

TEST(TouchCount, SmallCases) {
  EXPECT_EQ(touch_count(std::vector<double>{2.0, 1.0}), 2u);
  EXPECT_EQ(touch_count(std::vector<double>{1.0, 2.0}), 1u);
  EXPECT_EQ(touch_count(std::vector<double>{1.0}), 1u);
  EXPECT_EQ(touch_count(std::vector<double>{1.0, 1.0, 1.0}), 3u);
  EXPECT_EQ(touch_count(std::vector<double>{-1.0, -1.0, 5.0}), 1u);
}

TEST(TouchCount, MatchesOracle) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  for (int t = 0; t < 3000; ++t) {
    std::vector<double> v(1 + rng() % 12);
    for (auto& e : v) e = z(rng);
    ASSERT_EQ(touch_count(v), oracle::touch_count_oracle(v)) << t;
  }
}

TEST(TouchCount, MeanIsHarmonicNumber) {
  const std::size_t k = 4, draws = 40000;
  std::vector<double> counts(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    CounterRng rng(derive_seed(31, i));
    std::vector<double> z(k);
    for (auto& e : z) e = rng.normal();
    counts[i] = static_cast<double>(touch_count(z));
  }
  const auto ms = oracle::mean_se(counts);
  EXPECT_NEAR(ms.mean, oracle::harmonic(k), 4 * ms.se);
}

TEST(SparreAndersen, Expectations) {
  EXPECT_DOUBLE_EQ(sparre_andersen_expectation(1).touches, 1.0);
  EXPECT_NEAR(sparre_andersen_expectation(3).touches, 11.0 / 6.0, 1e-15);
  EXPECT_NEAR(sparre_andersen_expectation(5).touches, 137.0 / 60.0, 1e-15);
  EXPECT_NEAR(sparre_andersen_expectation(2).interior_vertices, 0.5 + 1.0 / 3.0, 1e-15);
}

TEST(GrenZeroProbability, SmallSupports) {
  EXPECT_DOUBLE_EQ(gren_zero_probability(0, 100, 1), 1.0);
  const double p1 = gren_zero_probability(1, 40000, 2);
  EXPECT_NEAR(p1, 0.5, 4 * std::sqrt(0.25 / 40000));
  const double p4 = gren_zero_probability(4, 40000, 3);
  EXPECT_NEAR(p4, 0.2, 4 * std::sqrt(0.16 / 40000));
}

TEST(GrenZeroProbability, AgreesWithDirectGrenOfLimitDraws) {
  const auto p = uniform_pmf(3);
  std::size_t zero = 0;
  const std::size_t draws = 20000;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto d = draw_limit(p, derive_seed(41, i));
    bool all = true;
    for (double v : d.y_gren) all = all && std::abs(v) < 1e-12;
    zero += all;
  }
  const double frac = static_cast<double>(zero) / draws;
  EXPECT_NEAR(frac, 0.25, 4 * std::sqrt(0.1875 / draws));
}

TEST(Rearrangement, MonotoneProbabilityOfLimit) {
  for (std::size_t y : {2u, 3u}) {
    const auto p = uniform_pmf(y);
    const std::size_t draws = 40000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto d = draw_limit(p, derive_seed(53 + y, i));
      hits += d.y == d.y_rear;
    }
    double fact = 1.0;
    for (std::size_t j = 2; j <= y + 1; ++j) fact *= static_cast<double>(j);
    const double expect = 1.0 / fact;
    EXPECT_NEAR(static_cast<double>(hits) / draws, expect, 4 * std::sqrt(expect * (1 - expect) / draws));
  }
}

TEST(SimulateLimits, VisitorSeesEveryDrawInOrder) {
  const auto p = uniform_pmf(2);
  std::size_t expected = 0;
  const auto s = simulate_limits(p, 50, 9, [&](std::size_t i, const LimitDraw& d) {
    EXPECT_EQ(i, expected++);
    EXPECT_EQ(d.y, draw_limit(p, derive_seed(9, i)).y);
  });
  EXPECT_EQ(expected, 50u);
  EXPECT_EQ(s.sq_l2_y.size(), 50u);
}

}  // namespace
}  // namespace monopmf
