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
#include "core/estimators.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace monopmf {

std::vector<MajorantSegment> concave_majorant_segments(std::span<const double> w) {
  if (w.empty()) throw DomainError("gren: input sequence is empty");
  std::vector<MajorantSegment> stack;
  stack.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    MajorantSegment seg{{i, i}, w[i]};
    // Pop while the hull would turn upward. Compares the same rounded slopes
    // that gren() emits, so the output is exactly non-increasing.
    while (!stack.empty() && stack.back().slope() < seg.slope()) {
      seg.span.first = stack.back().span.first;
      seg.sum += stack.back().sum;
      stack.pop_back();
    }
    stack.push_back(seg);
  }
  return stack;
}

std::vector<double> rear(std::span<const double> w) {
  if (w.empty()) throw DomainError("rear: input sequence is empty");
  std::vector<double> out(w.begin(), w.end());
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> gren(std::span<const double> w) {
  const auto segments = concave_majorant_segments(w);
  std::vector<double> out(w.size());
  for (const auto& seg : segments) {
    if (seg.span.length() == 1) {
      out[seg.span.first] = w[seg.span.first];
      continue;
    }
    const double slope = seg.slope();
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(seg.span.first),
              out.begin() + static_cast<std::ptrdiff_t>(seg.span.last) + 1, slope);
  }
  return out;
}

BlockPartition constancy_blocks(const Pmf& p) {
  if (!p.is_non_increasing()) throw DomainError("constancy blocks need a non-increasing pmf");
  const auto probs = p.probs();
  BlockPartition part;
  std::size_t start = 0;
  for (std::size_t x = 1; x <= probs.size(); ++x) {
    if (x == probs.size() || std::abs(probs[x] - probs[start]) > kConstancyTolerance) {
      part.blocks.push_back({start, x - 1});
      start = x;
    }
  }
  return part;
}

TransformedSequences limit_transform(std::span<const double> y, const BlockPartition& blocks) {
  if (y.size() != blocks.cover_length())
    throw DomainError("limit_transform: sequence length does not match the block partition");
  TransformedSequences out{std::vector<double>(y.begin(), y.end()),
                           std::vector<double>(y.begin(), y.end())};
  for (const auto& b : blocks.blocks) {
    if (b.length() == 1) continue;
    const auto sub = y.subspan(b.first, b.length());
    const auto r = rear(sub);
    const auto g = gren(sub);
    std::copy(r.begin(), r.end(), out.y_rear.begin() + static_cast<std::ptrdiff_t>(b.first));
    std::copy(g.begin(), g.end(), out.y_gren.begin() + static_cast<std::ptrdiff_t>(b.first));
  }
  return out;
}

MixingWeights mixing_estimate(std::span<const double> p) {
  MixingWeights q;
  q.weights.resize(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    const double next = x + 1 < p.size() ? p[x + 1] : 0.0;
    q.weights[x] = -static_cast<double>(x + 1) * (next - p[x]);
  }
  return q;
}

}  // namespace monopmf
