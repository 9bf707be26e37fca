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
#pragma once

#include <span>
#include <string>
#include <string_view>

namespace monopmf {

// Hellinger, or l_k with real k >= 1 (k = +inf for the sup norm).
class MetricKind {
 public:
  static MetricKind hellinger() noexcept { return MetricKind(true, 0.0); }
  static MetricKind ell(double k);
  static MetricKind ell_inf() noexcept;

  // Accepts "hellinger", "l1", "l2", "linf", "l{k}" for real k >= 1.
  static MetricKind parse(std::string_view name);

  bool is_hellinger() const noexcept { return hellinger_; }
  bool is_inf() const noexcept;
  double order() const noexcept { return k_; }
  // Canonical name; parse(name()) round-trips.
  std::string name() const;

  friend bool operator==(const MetricKind&, const MetricKind&) = default;

 private:
  MetricKind(bool hellinger, double k) : hellinger_(hellinger), k_(k) {}
  bool hellinger_ = false;
  double k_ = 0.0;
};

// Shorter input is zero-padded to the longer. Hellinger is H (not H^2) with
// H^2 = 1/2 sum (sqrt a - sqrt b)^2 and requires non-negative entries.
double distance(std::span<const double> a, std::span<const double> b, const MetricKind& m);

// sum |a_x - b_x|^k (max for k = inf), the loss behind the risk R_k.
double ell_power_loss(std::span<const double> a, std::span<const double> b, double k);

}  // namespace monopmf
