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
#include "core/harness.hpp"

#include "core/errors.hpp"
#include "core/estimators.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace monopmf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError("truth spec: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::size_t parse_index(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("truth spec: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::string format_real(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Empirical values padded with zeros up to `length`.
std::vector<double> padded(std::vector<double> v, std::size_t length) {
  if (v.size() < length) v.resize(length, 0.0);
  return v;
}

bool non_increasing(std::span<const double> v) {
  for (std::size_t x = 1; x < v.size(); ++x)
    if (v[x] > v[x - 1]) return false;
  return true;
}

DistanceStats summarise(std::vector<double> values) {
  DistanceStats s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile_type8(values, 0.25);
  s.median = quantile_type8(values, 0.5);
  s.q3 = quantile_type8(values, 0.75);
  return s;
}

constexpr double kInequalityTolerance = 1e-12;
constexpr double kMixingSumTolerance = 1e-10;

}  // namespace

EstimatorKind parse_estimator(std::string_view name) {
  if (name == "empirical" || name == "emp") return EstimatorKind::empirical;
  if (name == "rearrangement" || name == "rear") return EstimatorKind::rearrangement;
  if (name == "grenander" || name == "gren") return EstimatorKind::grenander;
  throw ParseError("unknown estimator '" + std::string(name) + "'");
}

std::string_view estimator_name(EstimatorKind e) noexcept {
  switch (e) {
    case EstimatorKind::empirical: return "empirical";
    case EstimatorKind::rearrangement: return "rear";
    case EstimatorKind::grenander: return "gren";
  }
  return "?";
}

std::vector<double> apply_estimator(EstimatorKind e, std::span<const double> empirical) {
  switch (e) {
    case EstimatorKind::empirical: return {empirical.begin(), empirical.end()};
    case EstimatorKind::rearrangement: return rear(empirical);
    case EstimatorKind::grenander: return gren(empirical);
  }
  return {};
}

Target parse_target(std::string_view name) {
  if (name == "pmf") return Target::pmf;
  if (name == "mixing") return Target::mixing;
  throw ParseError("unknown target '" + std::string(name) + "'");
}

std::string_view target_name(Target t) noexcept { return t == Target::pmf ? "pmf" : "mixing"; }

TruthSpec TruthSpec::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("truth spec '" + std::string(text) + "' has no family prefix");
  const auto family = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  TruthSpec spec;
  if (family == "uniform") {
    spec.family = Family::uniform;
    spec.y = parse_index(trim(body), "uniform endpoint");
  } else if (family == "geometric") {
    spec.family = Family::geometric;
    const auto parts = split(body, ':');
    if (parts.size() > 2) throw ParseError("truth spec: geometric takes theta[:tail_tol]");
    spec.theta = parse_real(parts[0], "theta");
    if (parts.size() == 2) spec.tail_tol = parse_real(parts[1], "tail tolerance");
  } else if (family == "mixture") {
    spec.family = Family::mixture;
    for (auto item : split(body, ',')) {
      const auto wy = split(item, ':');
      if (wy.size() != 2) throw ParseError("truth spec: mixture components are <weight>:<y>");
      spec.weights.push_back(parse_real(wy[0], "mixture weight"));
      spec.ys.push_back(parse_index(wy[1], "mixture endpoint"));
    }
  } else if (family == "values") {
    spec.family = Family::values;
    for (auto item : split(body, ',')) spec.values.push_back(parse_real(item, "probability"));
  } else {
    throw ParseError("truth spec: unknown family '" + std::string(family) + "'");
  }
  return spec;
}

Pmf TruthSpec::build() const {
  switch (family) {
    case Family::uniform: return uniform_pmf(y);
    case Family::geometric: return geometric_pmf(theta, tail_tol);
    case Family::mixture: return mixture_of_uniforms(weights, ys);
    case Family::values: return Pmf::from_probs(values, true);
  }
  throw DomainError("truth spec: unknown family");
}

std::string TruthSpec::to_string() const {
  std::string out;
  switch (family) {
    case Family::uniform: return "uniform:" + std::to_string(y);
    case Family::geometric:
      out = "geometric:" + format_real(theta);
      if (tail_tol != 1e-12) out += ":" + format_real(tail_tol);
      return out;
    case Family::mixture:
      out = "mixture:";
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) out += ",";
        out += format_real(weights[i]) + ":" + std::to_string(ys[i]);
      }
      return out;
    case Family::values:
      out = "values:";
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_real(values[i]);
      }
      return out;
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (n == 0) throw DomainError("experiment sample size must be positive");
  if (reps == 0) throw DomainError("experiment needs at least one replicate");
  if (estimators.empty()) throw DomainError("experiment needs at least one estimator");
  if (metrics.empty()) throw DomainError("experiment needs at least one metric");
  if (target == Target::mixing) {
    const bool has_emp = std::find(estimators.begin(), estimators.end(), EstimatorKind::empirical) != estimators.end();
    const bool has_hell = std::any_of(metrics.begin(), metrics.end(), [](const MetricKind& m) { return m.is_hellinger(); });
    if (has_emp && has_hell)
      throw DomainError("Hellinger distance is undefined for the signed empirical mixing estimate");
  }
}

double quantile_type8(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  const double n = static_cast<double>(sorted.size());
  // 1-based position h = (n + 1/3) p + 1/3, clamped to [1, n].
  const double h = std::clamp((n + 1.0 / 3.0) * prob + 1.0 / 3.0, 1.0, n);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo >= sorted.size()) return sorted.back();
  return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.reps;
  const std::size_t ne = cfg.estimators.size();
  const std::size_t nm = cfg.metrics.size();
  const auto& truth = cfg.truth.values();
  const bool check_inequalities = cfg.target == Target::pmf && cfg.truth.is_non_increasing();
  const std::vector<double> true_mixing =
      cfg.target == Target::mixing ? mixing_estimate(truth).weights : std::vector<double>{};

  ExperimentSummary summary;
  summary.config = cfg;
  summary.raw.assign(reps * ne * nm, 0.0);

  enum Flag : unsigned char { kMonotone = 1, kInequality = 2, kCoincidence = 4, kInvalidMixing = 8 };
  std::vector<unsigned char> flags(reps, 0);

  parallel_for(reps, cfg.threads, [&](std::size_t r) {
    const Counts counts = (r == 0 && cfg.first_replicate_counts)
                              ? *cfg.first_replicate_counts
                              : sample(cfg.truth, cfg.n, derive_seed(cfg.seed, r));
    const auto emp = empirical_values(counts);
    const std::vector<double> estimates[3] = {emp, rear(emp), gren(emp)};
    const auto& of = [&](EstimatorKind e) -> const std::vector<double>& {
      return estimates[static_cast<std::size_t>(e)];
    };
    unsigned char f = 0;

    const auto emp_on_support = padded(emp, truth.size());
    if (non_increasing(emp_on_support)) {
      f |= kMonotone;
      if (of(EstimatorKind::rearrangement) != emp || of(EstimatorKind::grenander) != emp) f |= kCoincidence;
    }

    if (cfg.target == Target::pmf) {
      for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t m = 0; m < nm; ++m)
          summary.raw[(r * ne + e) * nm + m] = distance(of(cfg.estimators[e]), truth, cfg.metrics[m]);
      if (check_inequalities) {
        for (const auto& metric : cfg.metrics) {
          const double d_emp = distance(emp, truth, metric);
          const double slack = kInequalityTolerance * (1.0 + d_emp);
          if (distance(of(EstimatorKind::rearrangement), truth, metric) > d_emp + slack ||
              distance(of(EstimatorKind::grenander), truth, metric) > d_emp + slack)
            f |= kInequality;
        }
      }
    } else {
      for (std::size_t e = 0; e < ne; ++e) {
        const auto q = mixing_estimate(of(cfg.estimators[e])).weights;
        if (cfg.estimators[e] != EstimatorKind::empirical) {
          double total = 0.0;
          bool negative = false;
          for (double v : q) {
            total += v;
            negative = negative || v < 0.0;
          }
          if (negative || std::abs(total - 1.0) > kMixingSumTolerance) f |= kInvalidMixing;
        }
        for (std::size_t m = 0; m < nm; ++m)
          summary.raw[(r * ne + e) * nm + m] = distance(q, true_mixing, cfg.metrics[m]);
      }
    }
    flags[r] = f;
  });

  for (auto f : flags) {
    if (f & kMonotone) ++summary.monotone_replicates;
    if (f & kInequality) ++summary.inequality_violations;
    if (f & kCoincidence) ++summary.coincidence_violations;
    if (f & kInvalidMixing) ++summary.invalid_mixing_rows;
  }

  summary.stats.resize(ne * nm);
  std::vector<double> column(reps);
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t m = 0; m < nm; ++m) {
      for (std::size_t r = 0; r < reps; ++r) column[r] = summary.raw[(r * ne + e) * nm + m];
      summary.stats[e * nm + m] = summarise(column);
    }
  }
  return summary;
}

RiskEstimate estimate_risk(const Pmf& truth, std::uint64_t n, double k, EstimatorKind est,
                           std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw DomainError("risk: sample size must be positive");
  if (reps == 0) throw DomainError("risk: needs at least one replicate");
  if (!(k >= 1.0)) throw DomainError("risk: metric order k must be >= 1");
  std::vector<double> losses(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    const auto emp = empirical_values(sample(truth, n, derive_seed(seed, r)));
    losses[r] = ell_power_loss(apply_estimator(est, emp), truth.values(), k);
  });
  RiskEstimate out;
  double sum = 0.0;
  for (double v : losses) sum += v;
  out.mean = sum / static_cast<double>(reps);
  if (reps > 1) {
    double ss = 0.0;
    for (double v : losses) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
  }
  return out;
}

FluctuationCdf fluctuation_cdf(const Pmf& truth, std::size_t x, std::uint64_t n, std::uint64_t reps,
                               std::uint64_t seed, EstimatorKind est, unsigned threads) {
  if (x >= truth.size()) throw DomainError("fluctuation_cdf: x lies outside the support");
  if (n == 0) throw DomainError("fluctuation_cdf: sample size must be positive");
  if (reps == 0) throw DomainError("fluctuation_cdf: needs at least one replicate");
  FluctuationCdf out;
  out.values.resize(reps);
  const double root_n = std::sqrt(static_cast<double>(n));
  parallel_for(reps, threads, [&](std::size_t r) {
    const auto emp = empirical_values(sample(truth, n, derive_seed(seed, r)));
    const auto estimate = apply_estimator(est, emp);
    const double value = x < estimate.size() ? estimate[x] : 0.0;
    out.values[r] = root_n * (value - truth[x]);
  });
  std::sort(out.values.begin(), out.values.end());
  out.levels.resize(reps);
  for (std::size_t i = 0; i < reps; ++i)
    out.levels[i] = static_cast<double>(i + 1) / static_cast<double>(reps);
  return out;
}

}  // namespace monopmf
