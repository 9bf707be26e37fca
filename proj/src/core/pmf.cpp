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
#include "core/pmf.hpp"

#include "core/errors.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monopmf {

Pmf Pmf::from_probs(std::vector<double> probs, bool monotone) {
  while (!probs.empty() && probs.back() == 0.0) probs.pop_back();
  if (probs.empty()) throw DomainError("pmf has no positive mass");
  double total = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    if (!std::isfinite(probs[x]) || probs[x] < 0.0)
      throw DomainError("pmf entry " + std::to_string(x) + " is negative or not finite");
    total += probs[x];
  }
  if (std::abs(total - 1.0) > kPmfTolerance)
    throw DomainError("pmf entries sum to " + std::to_string(total) + ", not 1");
  if (monotone) {
    for (std::size_t x = 0; x < probs.size(); ++x) {
      if (x + 1 < probs.size() && probs[x + 1] > probs[x] + kPmfTolerance)
        throw DomainError("pmf is not non-increasing at x = " + std::to_string(x));
      if (probs[x] > 1.0 / static_cast<double>(x + 1) + kPmfTolerance)
        throw DomainError("decreasing pmf violates p_x <= 1/(x+1) at x = " + std::to_string(x));
    }
  }
  return Pmf(std::move(probs), monotone);
}

bool Pmf::is_non_increasing() const noexcept {
  for (std::size_t x = 1; x < probs_.size(); ++x) {
    if (probs_[x] > probs_[x - 1] + kPmfTolerance) return false;
  }
  return true;
}

Counts Counts::from_counts(std::vector<std::uint64_t> counts) {
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) throw DomainError("counts must contain at least one observation");
  return Counts(std::move(counts), n);
}

Pmf uniform_pmf(std::size_t y) {
  return Pmf::from_probs(std::vector<double>(y + 1, 1.0 / static_cast<double>(y + 1)), true);
}

Pmf geometric_pmf(double theta, double tail_tol) {
  if (!(theta >= 0.0 && theta < 1.0)) throw DomainError("geometric theta must lie in [0, 1)");
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw DomainError("tail tolerance must lie in (0, 1)");
  std::vector<double> probs;
  double power = 1.0;  // theta^x
  do {
    probs.push_back((1.0 - theta) * power);
    power *= theta;
  } while (power >= tail_tol);
  // power is now the tail mass theta^(K+1).
  const double kept = 1.0 - power;
  for (auto& v : probs) v /= kept;
  return Pmf::from_probs(std::move(probs), true);
}

Pmf mixture_of_uniforms(std::span<const double> weights, std::span<const std::size_t> ys) {
  if (weights.empty() || weights.size() != ys.size())
    throw DomainError("mixture needs equally many weights and uniform endpoints");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw DomainError("mixture weights must be positive");
    if (i > 0 && ys[i] <= ys[i - 1]) throw DomainError("mixture endpoints must be strictly increasing");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kPmfTolerance) throw DomainError("mixture weights must sum to 1");
  std::vector<double> probs(ys.back() + 1, 0.0);
  for (std::size_t x = 0; x < probs.size(); ++x) {
    // Same terms in the same order for every x of a constancy block, so
    // flat stretches come out bit-identical.
    double v = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (x <= ys[i]) v += weights[i] / static_cast<double>(ys[i] + 1);
    }
    probs[x] = v;
  }
  return Pmf::from_probs(std::move(probs), true);
}

Counts sample(const Pmf& p, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be positive");
  const auto probs = p.probs();
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    acc += probs[x];
    cdf[x] = acc;
  }
  const double total = acc;
  const std::size_t last = probs.size() - 1;
  std::vector<std::uint64_t> counts(probs.size(), 0);
  CounterRng rng(seed);
  if (probs.size() <= 8) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const double u = rng.uniform() * total;
      std::size_t x = 0;
      while (x < last && u >= cdf[x]) ++x;
      ++counts[x];
    }
  } else {
    for (std::uint64_t i = 0; i < n; ++i) {
      const double u = rng.uniform() * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end() - 1, u);
      ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
  }
  return Counts::from_counts(std::move(counts));
}

std::vector<double> empirical_values(const Counts& c) {
  const double n = static_cast<double>(c.n());
  std::vector<double> probs(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) probs[x] = static_cast<double>(c.counts()[x]) / n;
  return probs;
}

Pmf empirical_pmf(const Counts& c) { return Pmf::from_probs(empirical_values(c), false); }

}  // namespace monopmf
