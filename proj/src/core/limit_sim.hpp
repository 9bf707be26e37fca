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
/* limit_sim.hpp - the Gaussian limit of sqrt(n)(p_hat - p) and its transforms.
 *
 * Y is centred Gaussian with cov(Y_x, Y_x') = p_x delta_{x,x'} - p_x p_x'.
 * It is realised as Y_x = W_x - p_x * sum_z W_z with independent
 * W_x ~ N(0, p_x). Y^R and Y^G apply rear / gren within every interval of
 * constancy of p. Under a uniform truth the partial sums of Y form a
 * discrete Brownian bridge.
 */
#pragma once

#include "core/estimators.hpp"
#include "core/pmf.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace monopmf {

struct LimitDraw {
  std::vector<double> y;
  std::vector<double> y_rear;
  std::vector<double> y_gren;
};

// Non-monotone p is rejected.
LimitDraw draw_limit(const Pmf& p, std::uint64_t seed);

// Same, with the partition precomputed (batch use).
LimitDraw draw_limit(const Pmf& p, const BlockPartition& blocks, std::uint64_t seed);

// One interval of constancy: value theta on `length` consecutive points.
struct ConstancyLevel {
  std::size_t first = 0;
  std::size_t length = 0;
  double theta = 0.0;
};

struct AsymptoticReport {
  double e_sq_l2_emp = 0.0;   // E||Y||_2^2 = sum p(1-p)
  double e_sq_l2_gren = 0.0;  // E||Y^G||_2^2
  double e_hell_emp = 0.0;    // E sum Y^2/p = kappa
  double e_hell_gren = 0.0;   // E sum (Y^G)^2/p
  double e_l1_emp = 0.0;      // E||Y||_1 = sqrt(2/pi) sum sqrt(p(1-p))
  std::size_t kappa = 0;      // largest support index
  std::vector<ConstancyLevel> levels;

  double l2_gap() const noexcept { return e_sq_l2_emp - e_sq_l2_gren; }
  double hellinger_gap() const noexcept { return e_hell_emp - e_hell_gren; }
};

AsymptoticReport asymptotics(const Pmf& p);

// Number of j in 1..k where the LCM of the partial sums {(j, z_1+...+z_j)}
// (starting from (0, 0)) touches them, contact within kTouchTolerance.
inline constexpr double kTouchTolerance = 1e-12;
std::size_t touch_count(std::span<const double> z);

// Monte Carlo estimate of P(gren(Y) == 0) under the uniform pmf on {0..y}:
// the fraction of draws whose bridge partial sums never rise above zero.
double gren_zero_probability(std::size_t y, std::uint64_t reps, std::uint64_t seed);

struct TouchpointExpectation {
  double touches = 0.0;           // E[T] = sum_{i=1}^k 1/i
  double interior_vertices = 0.0; // sum_{i=1}^k 1/(i+1)
};
TouchpointExpectation sparre_andersen_expectation(std::size_t k);

// Per-coordinate and per-draw aggregates of a batch of limit draws.
struct LimitBatchSummary {
  std::size_t draws = 0;
  std::vector<double> mean_y, mean_y_rear, mean_y_gren;
  std::vector<double> mean_sq_y, mean_sq_y_rear, mean_sq_y_gren;
  // Per-draw ||.||_2^2 and sum (.)^2 / p.
  std::vector<double> sq_l2_y, sq_l2_gren, chi_y, chi_gren;
};

// Draw i uses derive_seed(seed, i). Calls visit(i, draw) in index order when provided.
template <class Visitor>
LimitBatchSummary simulate_limits(const Pmf& p, std::size_t draws, std::uint64_t seed, Visitor&& visit);
LimitBatchSummary simulate_limits(const Pmf& p, std::size_t draws, std::uint64_t seed);

}  // namespace monopmf

#include "core/rng.hpp"

template <class Visitor>
monopmf::LimitBatchSummary monopmf::simulate_limits(const Pmf& p, std::size_t draws,
                                                    std::uint64_t seed, Visitor&& visit) {
  const auto blocks = constancy_blocks(p);
  const std::size_t k = p.size();
  LimitBatchSummary s;
  s.draws = draws;
  for (auto* v : {&s.mean_y, &s.mean_y_rear, &s.mean_y_gren, &s.mean_sq_y, &s.mean_sq_y_rear,
                  &s.mean_sq_y_gren})
    v->assign(k, 0.0);
  s.sq_l2_y.reserve(draws);
  s.sq_l2_gren.reserve(draws);
  s.chi_y.reserve(draws);
  s.chi_gren.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    const auto d = draw_limit(p, blocks, derive_seed(seed, i));
    double l2y = 0.0, l2g = 0.0, cy = 0.0, cg = 0.0;
    for (std::size_t x = 0; x < k; ++x) {
      s.mean_y[x] += d.y[x];
      s.mean_y_rear[x] += d.y_rear[x];
      s.mean_y_gren[x] += d.y_gren[x];
      s.mean_sq_y[x] += d.y[x] * d.y[x];
      s.mean_sq_y_rear[x] += d.y_rear[x] * d.y_rear[x];
      s.mean_sq_y_gren[x] += d.y_gren[x] * d.y_gren[x];
      l2y += d.y[x] * d.y[x];
      l2g += d.y_gren[x] * d.y_gren[x];
      cy += d.y[x] * d.y[x] / p[x];
      cg += d.y_gren[x] * d.y_gren[x] / p[x];
    }
    s.sq_l2_y.push_back(l2y);
    s.sq_l2_gren.push_back(l2g);
    s.chi_y.push_back(cy);
    s.chi_gren.push_back(cg);
    visit(i, d);
  }
  if (draws > 0) {
    const double inv = 1.0 / static_cast<double>(draws);
    for (auto* v : {&s.mean_y, &s.mean_y_rear, &s.mean_y_gren, &s.mean_sq_y, &s.mean_sq_y_rear,
                    &s.mean_sq_y_gren})
      for (auto& e : *v) e *= inv;
  }
  return s;
}
