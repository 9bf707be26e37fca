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
#include "core/limit_sim.hpp"

#include "core/errors.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <numbers>

namespace monopmf {

LimitDraw draw_limit(const Pmf& p, std::uint64_t seed) {
  return draw_limit(p, constancy_blocks(p), seed);
}

LimitDraw draw_limit(const Pmf& p, const BlockPartition& blocks, std::uint64_t seed) {
  if (!p.is_non_increasing()) throw DomainError("limit process needs a non-increasing pmf");
  const std::size_t k = p.size();
  CounterRng rng(seed);
  LimitDraw d;
  d.y.resize(k);
  double total = 0.0;
  for (std::size_t x = 0; x < k; ++x) {
    d.y[x] = std::sqrt(p[x]) * rng.normal();
    total += d.y[x];
  }
  for (std::size_t x = 0; x < k; ++x) d.y[x] -= p[x] * total;
  auto t = limit_transform(d.y, blocks);
  d.y_rear = std::move(t.y_rear);
  d.y_gren = std::move(t.y_gren);
  return d;
}

AsymptoticReport asymptotics(const Pmf& p) {
  const auto blocks = constancy_blocks(p);
  AsymptoticReport r;
  r.kappa = p.max_index();
  for (const auto& b : blocks.blocks) {
    const double theta = p[b.first];
    r.levels.push_back({b.first, b.length(), theta});
    for (std::size_t j = 1; j <= b.length(); ++j) {
      const double inv_j = 1.0 / static_cast<double>(j);
      r.e_sq_l2_gren += theta * (inv_j - theta);
      r.e_hell_gren += inv_j - theta;
    }
  }
  double sqrt_sum = 0.0;
  for (double v : p.probs()) {
    r.e_sq_l2_emp += v * (1.0 - v);
    sqrt_sum += std::sqrt(v * (1.0 - v));
  }
  r.e_hell_emp = static_cast<double>(r.kappa);
  r.e_l1_emp = std::sqrt(2.0 / std::numbers::pi) * sqrt_sum;
  return r;
}

std::size_t touch_count(std::span<const double> z) {
  if (z.empty()) throw DomainError("touch_count: input sequence is empty");
  // Anchored at (0, 0) with z_1..z_k this is the same graph gren works on.
  const auto segments = concave_majorant_segments(z);
  std::size_t touches = 0;
  for (const auto& seg : segments) {
    ++touches;  // right end of every hull segment
    const double slope = seg.slope();
    double partial = 0.0;
    for (std::size_t j = seg.span.first; j < seg.span.last; ++j) {
      partial += z[j];
      const double chord = slope * static_cast<double>(j - seg.span.first + 1);
      if (std::abs(chord - partial) <= kTouchTolerance) ++touches;
    }
  }
  return touches;
}

double gren_zero_probability(std::size_t y, std::uint64_t reps, std::uint64_t seed) {
  if (reps == 0) throw DomainError("gren_zero_probability needs at least one replicate");
  if (y == 0) return 1.0;
  const std::size_t k = y + 1;
  const double theta = 1.0 / static_cast<double>(k);
  const double scale = std::sqrt(theta);
  std::vector<double> w(k);
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    CounterRng rng(derive_seed(seed, r));
    double total = 0.0;
    for (auto& v : w) {
      v = scale * rng.normal();
      total += v;
    }
    // U_j = sum_{x<=j} (W_x - theta * total); U_y = 0 identically.
    double u = 0.0;
    bool below = true;
    for (std::size_t x = 0; x + 1 < k && below; ++x) {
      u += w[x] - theta * total;
      below = u <= 0.0;
    }
    if (below) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(reps);
}

TouchpointExpectation sparre_andersen_expectation(std::size_t k) {
  if (k == 0) throw DomainError("sparre_andersen_expectation needs k >= 1");
  TouchpointExpectation e;
  for (std::size_t i = 1; i <= k; ++i) {
    e.touches += 1.0 / static_cast<double>(i);
    e.interior_vertices += 1.0 / static_cast<double>(i + 1);
  }
  return e;
}

LimitBatchSummary simulate_limits(const Pmf& p, std::size_t draws, std::uint64_t seed) {
  return simulate_limits(p, draws, seed, [](std::size_t, const LimitDraw&) {});
}

}  // namespace monopmf
