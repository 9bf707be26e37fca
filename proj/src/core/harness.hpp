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
/* harness.hpp - declarative Monte Carlo experiments over the three estimators.
 *
 * Replicate r samples its data with seed derive_seed(cfg.seed, r), so every
 * replicate is reproducible on its own and results do not depend on the
 * thread count. Aggregation always runs in replicate order.
 */
#pragma once

#include "core/metrics.hpp"
#include "core/pmf.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monopmf {

enum class EstimatorKind { empirical, rearrangement, grenander };

// "empirical"/"emp", "rearrangement"/"rear", "grenander"/"gren".
EstimatorKind parse_estimator(std::string_view name);
std::string_view estimator_name(EstimatorKind e) noexcept;
inline constexpr EstimatorKind kAllEstimators[] = {EstimatorKind::empirical,
                                                   EstimatorKind::rearrangement,
                                                   EstimatorKind::grenander};

// Estimate from an empirical pmf (as a plain vector).
std::vector<double> apply_estimator(EstimatorKind e, std::span<const double> empirical);

enum class Target { pmf, mixing };
Target parse_target(std::string_view name);
std::string_view target_name(Target t) noexcept;

// Textual truth description:
//   uniform:<y>
//   geometric:<theta>[:<tail_tol>]
//   mixture:<w1>:<y1>,<w2>:<y2>,...
//   values:<p0>,<p1>,...          (must be non-increasing)
struct TruthSpec {
  enum class Family { uniform, geometric, mixture, values };
  Family family = Family::uniform;
  std::size_t y = 0;
  double theta = 0.0;
  double tail_tol = 1e-12;
  std::vector<double> weights;
  std::vector<std::size_t> ys;
  std::vector<double> values;

  static TruthSpec parse(std::string_view text);
  Pmf build() const;
  std::string to_string() const;
};

struct ExperimentConfig {
  Pmf truth = uniform_pmf(0);
  std::string truth_label;
  std::uint64_t n = 1;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  std::vector<EstimatorKind> estimators{std::begin(kAllEstimators), std::end(kAllEstimators)};
  std::vector<MetricKind> metrics{MetricKind::hellinger(), MetricKind::ell(1.0), MetricKind::ell(2.0),
                                  MetricKind::ell_inf()};
  Target target = Target::pmf;
  // Replaces the sampled data of replicate 0 (used to replay a fixed dataset).
  std::optional<Counts> first_replicate_counts;
  unsigned threads = 0;

  // Throws DomainError on reps == 0, n == 0, empty sets, or a Hellinger
  // metric on the signed empirical mixing estimate.
  void validate() const;
};

// Order statistics follow the median-unbiased definition (Hyndman-Fan type 8).
inline constexpr std::string_view kQuantileDefinition = "hyndman-fan-8 (median-unbiased)";
double quantile_type8(std::span<const double> sorted, double prob);

struct DistanceStats {
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct ExperimentSummary {
  ExperimentConfig config;
  // raw[(r * E + e) * M + m]
  std::vector<double> raw;
  // stats[e * M + m]
  std::vector<DistanceStats> stats;
  // Replicates whose empirical pmf is already non-increasing on the truth's support.
  std::uint64_t monotone_replicates = 0;
  // Replicates where gren or rear is farther from the truth than the empirical
  // estimate in some configured metric (pmf target, tolerance 1e-12).
  std::uint64_t inequality_violations = 0;
  // Replicates with a non-increasing empirical pmf where gren or rear differ from it.
  std::uint64_t coincidence_violations = 0;
  // Mixing rows of rear/gren that are negative or fail to sum to 1 within 1e-10.
  std::uint64_t invalid_mixing_rows = 0;

  std::size_t estimator_count() const noexcept { return config.estimators.size(); }
  std::size_t metric_count() const noexcept { return config.metrics.size(); }
  double value(std::size_t rep, std::size_t e, std::size_t m) const {
    return raw[(rep * estimator_count() + e) * metric_count() + m];
  }
  const DistanceStats& stat(std::size_t e, std::size_t m) const { return stats[e * metric_count() + m]; }
};

ExperimentSummary run_experiment(const ExperimentConfig& cfg);

struct RiskEstimate {
  double mean = 0.0;
  double se = 0.0;
};

// Monte Carlo R_k = E sum |p~_x - p_x|^k (max for k = inf) with its standard error.
RiskEstimate estimate_risk(const Pmf& truth, std::uint64_t n, double k, EstimatorKind est,
                           std::uint64_t reps, std::uint64_t seed, unsigned threads = 0);

struct FluctuationCdf {
  std::vector<double> values;  // sorted sqrt(n) (p~_x - p_x)
  std::vector<double> levels;  // (i + 1) / reps
};

FluctuationCdf fluctuation_cdf(const Pmf& truth, std::size_t x, std::uint64_t n, std::uint64_t reps,
                               std::uint64_t seed, EstimatorKind est, unsigned threads = 0);

}  // namespace monopmf
