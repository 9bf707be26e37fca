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
/* io.hpp - text file formats.
 *
 * Pmf files:    one "x<TAB>prob" line per support point, x = 0, 1, ... with no gaps.
 * Counts files: one "x<TAB>count" line per support point, same layout.
 * Machine-readable numbers are written with 17 significant digits so that
 * they parse back to the identical double.
 */
#pragma once

#include "core/harness.hpp"
#include "core/limit_sim.hpp"
#include "core/pmf.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monopmf::io {

std::string format_g17(double v);
// Human-readable, `digits` significant digits.
std::string format_short(double v, int digits = 5);

std::vector<double> parse_pmf_text(std::string_view text);
std::vector<std::uint64_t> parse_counts_text(std::string_view text);
std::string pmf_text(std::span<const double> probs);
std::string counts_text(std::span<const std::uint64_t> counts);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::vector<double> read_pmf_values(const std::filesystem::path& path);
Pmf read_pmf(const std::filesystem::path& path, bool monotone);
Counts read_counts(const std::filesystem::path& path);

// replicate,estimator,metric,value
std::string experiment_raw_csv(const ExperimentSummary& s);
// estimator,metric,mean,sd,min,q1,median,q3,max
std::string experiment_summary_csv(const ExperimentSummary& s);
// Config, library version, quantile definition and run counters.
std::string experiment_metadata_json(const ExperimentSummary& s);

// draw,x,y,y_rear,y_gren header for per-draw limit rows.
inline constexpr std::string_view kLimitDrawHeader = "draw,x,y,y_rear,y_gren\n";
std::string limit_draw_rows(std::size_t draw, const LimitDraw& d);
// Per-coordinate means and second moments with the theoretical variance p(1-p).
std::string limit_aggregate_csv(const Pmf& p, const LimitBatchSummary& s);

}  // namespace monopmf::io
