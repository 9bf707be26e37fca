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
#include "core/metrics.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace monopmf {

namespace {

template <class F>
void for_each_padded(std::span<const double> a, std::span<const double> b, F&& f) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t x = 0; x < n; ++x) {
    f(x < a.size() ? a[x] : 0.0, x < b.size() ? b[x] : 0.0);
  }
}

std::string format_order(double k) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, k);
  return std::string(buf, res.ptr);
}

}  // namespace

MetricKind MetricKind::ell(double k) {
  if (!(k >= 1.0)) throw DomainError("metric order k must be >= 1");
  return MetricKind(false, k);
}

MetricKind MetricKind::ell_inf() noexcept {
  return MetricKind(false, std::numeric_limits<double>::infinity());
}

bool MetricKind::is_inf() const noexcept { return !hellinger_ && std::isinf(k_); }

MetricKind MetricKind::parse(std::string_view name) {
  if (name == "hellinger") return hellinger();
  if (name.size() < 2 || name.front() != 'l') throw ParseError("unknown metric '" + std::string(name) + "'");
  const auto rest = name.substr(1);
  if (rest == "inf") return ell_inf();
  double k = 0.0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || !std::isfinite(k))
    throw ParseError("unknown metric '" + std::string(name) + "'");
  if (k < 1.0) throw ParseError("metric order must be >= 1 in '" + std::string(name) + "'");
  return ell(k);
}

std::string MetricKind::name() const {
  if (hellinger_) return "hellinger";
  if (is_inf()) return "linf";
  return "l" + format_order(k_);
}

double ell_power_loss(std::span<const double> a, std::span<const double> b, double k) {
  if (!(k >= 1.0)) throw DomainError("metric order k must be >= 1");
  double acc = 0.0;
  if (std::isinf(k)) {
    for_each_padded(a, b, [&](double u, double v) { acc = std::max(acc, std::abs(u - v)); });
  } else if (k == 1.0) {
    for_each_padded(a, b, [&](double u, double v) { acc += std::abs(u - v); });
  } else if (k == 2.0) {
    for_each_padded(a, b, [&](double u, double v) { acc += (u - v) * (u - v); });
  } else {
    for_each_padded(a, b, [&](double u, double v) { acc += std::pow(std::abs(u - v), k); });
  }
  return acc;
}

double distance(std::span<const double> a, std::span<const double> b, const MetricKind& m) {
  if (m.is_hellinger()) {
    double acc = 0.0;
    for_each_padded(a, b, [&](double u, double v) {
      if (u < 0.0 || v < 0.0) throw DomainError("Hellinger distance needs non-negative entries");
      const double d = std::sqrt(u) - std::sqrt(v);
      acc += d * d;
    });
    return std::sqrt(0.5 * acc);
  }
  const double k = m.order();
  const double loss = ell_power_loss(a, b, k);
  if (std::isinf(k) || k == 1.0) return loss;
  if (k == 2.0) return std::sqrt(loss);
  return std::pow(loss, 1.0 / k);
}

}  // namespace monopmf
