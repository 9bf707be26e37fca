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
/* pmf.hpp - finite-support probability mass functions on {0, ..., K}. */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace monopmf {

// Absolute tolerance used for sum-to-one, monotonicity and the p_x <= 1/(x+1) bound.
inline constexpr double kPmfTolerance = 1e-12;

// Immutable pmf on {0, ..., K}. The last entry is always positive.
class Pmf {
 public:
  // Validates entries (finite, >= 0, sum 1 within kPmfTolerance) and trims
  // trailing zeros. With monotone = true the values must also be
  // non-increasing and satisfy p_x <= 1/(x+1).
  static Pmf from_probs(std::vector<double> probs, bool monotone);

  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& values() const noexcept { return probs_; }
  double operator[](std::size_t x) const noexcept { return x < probs_.size() ? probs_[x] : 0.0; }
  std::size_t size() const noexcept { return probs_.size(); }
  // Largest support index.
  std::size_t max_index() const noexcept { return probs_.size() - 1; }
  bool monotone_flag() const noexcept { return monotone_; }

  // True when the values are non-increasing (within kPmfTolerance), whatever the flag.
  bool is_non_increasing() const noexcept;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  Pmf(std::vector<double> probs, bool monotone) : probs_(std::move(probs)), monotone_(monotone) {}

  std::vector<double> probs_;
  bool monotone_ = false;
};

// Observed frequencies on {0, ..., K_obs} with total n >= 1.
class Counts {
 public:
  // Trims trailing zeros; throws DomainError when the total is zero.
  static Counts from_counts(std::vector<std::uint64_t> counts);

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return counts_.size(); }

  friend bool operator==(const Counts&, const Counts&) = default;

 private:
  Counts(std::vector<std::uint64_t> counts, std::uint64_t n) : counts_(std::move(counts)), n_(n) {}

  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

// Signed mixing weights q_x; they sum to one but the empirical plug-in may be negative.
struct MixingWeights {
  std::vector<double> weights;
};

Pmf uniform_pmf(std::size_t y);

// (1 - theta) theta^x truncated at the smallest K whose tail mass theta^(K+1)
// is below tail_tol, then renormalised proportionally.
Pmf geometric_pmf(double theta, double tail_tol = 1e-12);

// sum_i weights[i] * 1{x <= ys[i]} / (ys[i] + 1). ys strictly increasing.
Pmf mixture_of_uniforms(std::span<const double> weights, std::span<const std::size_t> ys);

// n i.i.d. draws by inverse CDF on a CounterRng keyed by seed.
Counts sample(const Pmf& p, std::uint64_t n, std::uint64_t seed);

// counts / n. Internal zeros are kept; the flag is never set.
Pmf empirical_pmf(const Counts& c);

// The same values as a plain vector, for feeding estimators.
std::vector<double> empirical_values(const Counts& c);

}  // namespace monopmf
