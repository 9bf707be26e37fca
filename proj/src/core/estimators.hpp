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
/* estimators.hpp - monotone rearrangement and Grenander operators.
 *
 * rear(w) sorts w into non-increasing order. gren(w) returns the left slopes
 * of the least concave majorant of the cumulative-sum graph
 * {(j, w_0 + ... + w_j) : j = -1, ..., K} anchored at (-1, 0), which is the
 * equal-weight antitonic regression of w.
 */
#pragma once

#include "core/pmf.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace monopmf {

// Tolerance for grouping equal values of a decreasing pmf into blocks.
inline constexpr double kConstancyTolerance = 1e-12;

// Closed index interval [first, last].
struct IndexBlock {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t length() const noexcept { return last - first + 1; }
  friend bool operator==(const IndexBlock&, const IndexBlock&) = default;
};

// Ordered, disjoint blocks covering {0, ..., K}.
struct BlockPartition {
  std::vector<IndexBlock> blocks;
  std::size_t cover_length() const noexcept { return blocks.empty() ? 0 : blocks.back().last + 1; }
};

// Segments of the least concave majorant: each block is one hull segment of
// the cumulative sums and carries the average of w over it.
struct MajorantSegment {
  IndexBlock span;
  double sum = 0.0;
  double slope() const noexcept { return sum / static_cast<double>(span.length()); }
};

// Monotone-stack construction shared by gren and the touchpoint statistics.
// Adjacent segments are merged only while the earlier slope is strictly
// below the later one, so equal consecutive values stay separate.
std::vector<MajorantSegment> concave_majorant_segments(std::span<const double> w);

std::vector<double> rear(std::span<const double> w);
std::vector<double> gren(std::span<const double> w);

// Maximal runs of equal values (within kConstancyTolerance of the run's first value).
BlockPartition constancy_blocks(const Pmf& p);

struct TransformedSequences {
  std::vector<double> y_rear;
  std::vector<double> y_gren;
};

// Apply rear and gren separately within each block of the partition.
TransformedSequences limit_transform(std::span<const double> y, const BlockPartition& blocks);

// q_x = -(x+1)(p_{x+1} - p_x) with p_{K+1} = 0. No renormalisation.
MixingWeights mixing_estimate(std::span<const double> p);

}  // namespace monopmf
