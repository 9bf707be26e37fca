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
/* monopmf.cpp - extern "C" surface over the C++ core.
 *
 * Exceptions never cross this boundary: each entry point maps them to a
 * status code and records the message in a thread-local buffer.
 */
#include "monopmf/monopmf.h"

#include "core/errors.hpp"
#include "core/estimators.hpp"
#include "core/harness.hpp"
#include "core/io.hpp"
#include "core/limit_sim.hpp"
#include "core/metrics.hpp"
#include "core/pmf.hpp"

#include <algorithm>
#include <new>
#include <span>
#include <string>
#include <string_view>

struct monopmf_pmf {
  monopmf::Pmf value;
};

struct monopmf_counts {
  monopmf::Counts value;
};

struct monopmf_summary {
  monopmf::ExperimentSummary value;
};

namespace {

thread_local std::string g_last_error;

monopmf_status fail(monopmf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
monopmf_status guarded(F&& f) noexcept {
  try {
    g_last_error.clear();
    return f();
  } catch (const monopmf::DomainError& e) {
    return fail(MONOPMF_E_DOMAIN, e.what());
  } catch (const monopmf::ParseError& e) {
    return fail(MONOPMF_E_PARSE, e.what());
  } catch (const monopmf::IoError& e) {
    return fail(MONOPMF_E_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MONOPMF_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MONOPMF_E_INTERNAL, e.what());
  } catch (...) {
    return fail(MONOPMF_E_INTERNAL, "unknown error");
  }
}

#define MONOPMF_REQUIRE(ptr) \
  if (!(ptr)) return fail(MONOPMF_E_INVALID_ARGUMENT, #ptr " must not be NULL")

template <class T>
monopmf_status copy_out(std::span<const T> src, T* out, std::size_t capacity, std::size_t* length) {
  if (length) *length = src.size();
  if (capacity < src.size()) return fail(MONOPMF_E_BUFFER, "output buffer too small");
  if (!out) return fail(MONOPMF_E_INVALID_ARGUMENT, "out must not be NULL");
  std::copy(src.begin(), src.end(), out);
  return MONOPMF_OK;
}

bool to_estimator(monopmf_estimator e, monopmf::EstimatorKind& out) {
  switch (e) {
    case MONOPMF_EMPIRICAL: out = monopmf::EstimatorKind::empirical; return true;
    case MONOPMF_REARRANGEMENT: out = monopmf::EstimatorKind::rearrangement; return true;
    case MONOPMF_GRENANDER: out = monopmf::EstimatorKind::grenander; return true;
  }
  return false;
}

std::vector<monopmf::MetricKind> parse_metric_list(std::string_view text) {
  std::vector<monopmf::MetricKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!item.empty()) out.push_back(monopmf::MetricKind::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

monopmf_status make_pmf(monopmf::Pmf p, monopmf_pmf** out) {
  *out = new monopmf_pmf{std::move(p)};
  return MONOPMF_OK;
}

}  // namespace

extern "C" {

const char* monopmf_version(void) { return MONOPMF_VERSION_STRING; }

const char* monopmf_last_error(void) { return g_last_error.c_str(); }

const char* monopmf_status_string(monopmf_status status) {
  switch (status) {
    case MONOPMF_OK: return "ok";
    case MONOPMF_E_INVALID_ARGUMENT: return "invalid argument";
    case MONOPMF_E_DOMAIN: return "domain error";
    case MONOPMF_E_PARSE: return "parse error";
    case MONOPMF_E_IO: return "i/o error";
    case MONOPMF_E_BUFFER: return "buffer too small";
    case MONOPMF_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

monopmf_status monopmf_pmf_uniform(size_t y, monopmf_pmf** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    return make_pmf(monopmf::uniform_pmf(y), out);
  });
}

monopmf_status monopmf_pmf_geometric(double theta, double tail_tol, monopmf_pmf** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    return make_pmf(monopmf::geometric_pmf(theta, tail_tol), out);
  });
}

monopmf_status monopmf_pmf_mixture(const double* weights, const size_t* ys, size_t len, monopmf_pmf** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    MONOPMF_REQUIRE(weights);
    MONOPMF_REQUIRE(ys);
    return make_pmf(monopmf::mixture_of_uniforms({weights, len}, {ys, len}), out);
  });
}

monopmf_status monopmf_pmf_from_spec(const char* spec, monopmf_pmf** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    MONOPMF_REQUIRE(spec);
    return make_pmf(monopmf::TruthSpec::parse(spec).build(), out);
  });
}

monopmf_status monopmf_pmf_from_values(const double* probs, size_t len, int monotone, monopmf_pmf** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    MONOPMF_REQUIRE(probs);
    return make_pmf(monopmf::Pmf::from_probs({probs, probs + len}, monotone != 0), out);
  });
}

monopmf_status monopmf_pmf_read(const char* path, int monotone, monopmf_pmf** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    MONOPMF_REQUIRE(path);
    return make_pmf(monopmf::io::read_pmf(path, monotone != 0), out);
  });
}

monopmf_status monopmf_pmf_write(const monopmf_pmf* p, const char* path) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    MONOPMF_REQUIRE(path);
    monopmf::io::write_file_atomic(path, monopmf::io::pmf_text(p->value.probs()));
    return MONOPMF_OK;
  });
}

size_t monopmf_pmf_size(const monopmf_pmf* p) { return p ? p->value.size() : 0; }

int monopmf_pmf_is_monotone(const monopmf_pmf* p) { return p && p->value.is_non_increasing() ? 1 : 0; }

monopmf_status monopmf_pmf_values(const monopmf_pmf* p, double* out, size_t capacity, size_t* length) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    return copy_out(p->value.probs(), out, capacity, length);
  });
}

void monopmf_pmf_free(monopmf_pmf* p) { delete p; }

monopmf_status monopmf_sequence_write(const double* values, size_t len, const char* path) {
  return guarded([&] {
    MONOPMF_REQUIRE(path);
    if (len && !values) return fail(MONOPMF_E_INVALID_ARGUMENT, "values must not be NULL");
    monopmf::io::write_file_atomic(path, monopmf::io::pmf_text({values, len}));
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_sequence_read(const char* path, double* out, size_t capacity, size_t* length) {
  return guarded([&] {
    MONOPMF_REQUIRE(path);
    const auto values = monopmf::io::read_pmf_values(path);
    return copy_out(std::span<const double>(values), out, capacity, length);
  });
}

monopmf_status monopmf_counts_from_values(const uint64_t* counts, size_t len, monopmf_counts** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    MONOPMF_REQUIRE(counts);
    *out = new monopmf_counts{monopmf::Counts::from_counts({counts, counts + len})};
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_counts_read(const char* path, monopmf_counts** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    MONOPMF_REQUIRE(path);
    *out = new monopmf_counts{monopmf::io::read_counts(path)};
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_counts_write(const monopmf_counts* c, const char* path) {
  return guarded([&] {
    MONOPMF_REQUIRE(c);
    MONOPMF_REQUIRE(path);
    monopmf::io::write_file_atomic(path, monopmf::io::counts_text(c->value.counts()));
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_sample(const monopmf_pmf* p, uint64_t n, uint64_t seed, monopmf_counts** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    MONOPMF_REQUIRE(out);
    *out = new monopmf_counts{monopmf::sample(p->value, n, seed)};
    return MONOPMF_OK;
  });
}

size_t monopmf_counts_size(const monopmf_counts* c) { return c ? c->value.size() : 0; }

uint64_t monopmf_counts_total(const monopmf_counts* c) { return c ? c->value.n() : 0; }

monopmf_status monopmf_counts_values(const monopmf_counts* c, uint64_t* out, size_t capacity, size_t* length) {
  return guarded([&] {
    MONOPMF_REQUIRE(c);
    return copy_out(c->value.counts(), out, capacity, length);
  });
}

void monopmf_counts_free(monopmf_counts* c) { delete c; }

monopmf_status monopmf_estimate(const monopmf_counts* c, monopmf_estimator est, double* out, size_t capacity,
                                size_t* length) {
  return guarded([&] {
    MONOPMF_REQUIRE(c);
    monopmf::EstimatorKind kind;
    if (!to_estimator(est, kind)) return fail(MONOPMF_E_INVALID_ARGUMENT, "unknown estimator");
    const auto values = monopmf::apply_estimator(kind, monopmf::empirical_values(c->value));
    return copy_out(std::span<const double>(values), out, capacity, length);
  });
}

monopmf_status monopmf_rear(const double* w, size_t len, double* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(w);
    MONOPMF_REQUIRE(out);
    const auto r = monopmf::rear({w, len});
    std::copy(r.begin(), r.end(), out);
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_gren(const double* w, size_t len, double* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(w);
    MONOPMF_REQUIRE(out);
    const auto g = monopmf::gren({w, len});
    std::copy(g.begin(), g.end(), out);
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_mixing(const double* p, size_t len, double* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    MONOPMF_REQUIRE(out);
    const auto q = monopmf::mixing_estimate({p, len});
    std::copy(q.weights.begin(), q.weights.end(), out);
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_constancy_blocks(const monopmf_pmf* p, size_t* first, size_t* last, size_t capacity,
                                        size_t* count) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    const auto part = monopmf::constancy_blocks(p->value);
    if (count) *count = part.blocks.size();
    if (capacity < part.blocks.size()) return fail(MONOPMF_E_BUFFER, "output buffer too small");
    MONOPMF_REQUIRE(first);
    MONOPMF_REQUIRE(last);
    for (std::size_t i = 0; i < part.blocks.size(); ++i) {
      first[i] = part.blocks[i].first;
      last[i] = part.blocks[i].last;
    }
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_distance(const double* a, size_t len_a, const double* b, size_t len_b, const char* metric,
                                double* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(metric);
    MONOPMF_REQUIRE(out);
    if ((len_a && !a) || (len_b && !b)) return fail(MONOPMF_E_INVALID_ARGUMENT, "NULL sequence");
    *out = monopmf::distance({a, len_a}, {b, len_b}, monopmf::MetricKind::parse(metric));
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_asymptotics_compute(const monopmf_pmf* p, monopmf_asymptotics* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    MONOPMF_REQUIRE(out);
    const auto r = monopmf::asymptotics(p->value);
    *out = {r.e_sq_l2_emp, r.e_sq_l2_gren, r.e_hell_emp, r.e_hell_gren, r.e_l1_emp, r.kappa, r.levels.size()};
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_draw_limit(const monopmf_pmf* p, uint64_t seed, double* y, double* y_rear, double* y_gren) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    MONOPMF_REQUIRE(y);
    MONOPMF_REQUIRE(y_rear);
    MONOPMF_REQUIRE(y_gren);
    const auto d = monopmf::draw_limit(p->value, seed);
    std::copy(d.y.begin(), d.y.end(), y);
    std::copy(d.y_rear.begin(), d.y_rear.end(), y_rear);
    std::copy(d.y_gren.begin(), d.y_gren.end(), y_gren);
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_limits_write(const monopmf_pmf* p, uint64_t draws, uint64_t seed, const char* per_draw_csv,
                                    const char* aggregate_csv) {
  return guarded([&] {
    MONOPMF_REQUIRE(p);
    if (draws == 0) return fail(MONOPMF_E_DOMAIN, "limits: need at least one draw");
    std::string rows;
    if (per_draw_csv) rows = monopmf::io::kLimitDrawHeader;
    const auto summary = monopmf::simulate_limits(p->value, draws, seed, [&](std::size_t i, const monopmf::LimitDraw& d) {
      if (per_draw_csv) rows += monopmf::io::limit_draw_rows(i, d);
    });
    if (per_draw_csv) monopmf::io::write_file_atomic(per_draw_csv, rows);
    if (aggregate_csv) monopmf::io::write_file_atomic(aggregate_csv, monopmf::io::limit_aggregate_csv(p->value, summary));
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_touch_count(const double* z, size_t len, size_t* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(z);
    MONOPMF_REQUIRE(out);
    *out = monopmf::touch_count({z, len});
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_gren_zero_probability(size_t y, uint64_t reps, uint64_t seed, double* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(out);
    *out = monopmf::gren_zero_probability(y, reps, seed);
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_sparre_andersen(size_t k, double* touches, double* interior_vertices) {
  return guarded([&] {
    const auto e = monopmf::sparre_andersen_expectation(k);
    if (touches) *touches = e.touches;
    if (interior_vertices) *interior_vertices = e.interior_vertices;
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_run_experiment(const monopmf_experiment_config* cfg, monopmf_summary** out) {
  return guarded([&] {
    MONOPMF_REQUIRE(cfg);
    MONOPMF_REQUIRE(out);
    MONOPMF_REQUIRE(cfg->truth);
    MONOPMF_REQUIRE(cfg->metrics);
    monopmf::ExperimentConfig c;
    c.truth = cfg->truth->value;
    c.truth_label = cfg->truth_label ? cfg->truth_label : "";
    c.n = cfg->n;
    c.reps = cfg->reps;
    c.seed = cfg->seed;
    c.estimators.clear();
    if (cfg->estimator_count && !cfg->estimators) return fail(MONOPMF_E_INVALID_ARGUMENT, "estimators must not be NULL");
    for (std::size_t i = 0; i < cfg->estimator_count; ++i) {
      monopmf::EstimatorKind kind;
      if (!to_estimator(cfg->estimators[i], kind)) return fail(MONOPMF_E_INVALID_ARGUMENT, "unknown estimator");
      c.estimators.push_back(kind);
    }
    c.metrics = parse_metric_list(cfg->metrics);
    switch (cfg->target) {
      case MONOPMF_TARGET_PMF: c.target = monopmf::Target::pmf; break;
      case MONOPMF_TARGET_MIXING: c.target = monopmf::Target::mixing; break;
      default: return fail(MONOPMF_E_INVALID_ARGUMENT, "unknown target");
    }
    if (cfg->first_replicate_counts) c.first_replicate_counts = cfg->first_replicate_counts->value;
    c.threads = cfg->threads;
    *out = new monopmf_summary{monopmf::run_experiment(c)};
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_summary_stats(const monopmf_summary* s, size_t estimator_index, size_t metric_index,
                                     monopmf_distance_stats* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(s);
    MONOPMF_REQUIRE(out);
    if (estimator_index >= s->value.estimator_count() || metric_index >= s->value.metric_count())
      return fail(MONOPMF_E_INVALID_ARGUMENT, "summary index out of range");
    const auto& st = s->value.stat(estimator_index, metric_index);
    *out = {st.mean, st.sd, st.min, st.q1, st.median, st.q3, st.max};
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_summary_value(const monopmf_summary* s, uint64_t replicate, size_t estimator_index,
                                     size_t metric_index, double* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(s);
    MONOPMF_REQUIRE(out);
    if (replicate >= s->value.config.reps || estimator_index >= s->value.estimator_count() ||
        metric_index >= s->value.metric_count())
      return fail(MONOPMF_E_INVALID_ARGUMENT, "summary index out of range");
    *out = s->value.value(replicate, estimator_index, metric_index);
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_summary_counters(const monopmf_summary* s, monopmf_run_counters* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(s);
    MONOPMF_REQUIRE(out);
    const auto& v = s->value;
    *out = {v.monotone_replicates, v.inequality_violations, v.coincidence_violations, v.invalid_mixing_rows};
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_summary_write_raw_csv(const monopmf_summary* s, const char* path) {
  return guarded([&] {
    MONOPMF_REQUIRE(s);
    MONOPMF_REQUIRE(path);
    monopmf::io::write_file_atomic(path, monopmf::io::experiment_raw_csv(s->value));
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_summary_write_csv(const monopmf_summary* s, const char* path) {
  return guarded([&] {
    MONOPMF_REQUIRE(s);
    MONOPMF_REQUIRE(path);
    monopmf::io::write_file_atomic(path, monopmf::io::experiment_summary_csv(s->value));
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_summary_write_metadata(const monopmf_summary* s, const char* path) {
  return guarded([&] {
    MONOPMF_REQUIRE(s);
    MONOPMF_REQUIRE(path);
    monopmf::io::write_file_atomic(path, monopmf::io::experiment_metadata_json(s->value));
    return MONOPMF_OK;
  });
}

void monopmf_summary_free(monopmf_summary* s) { delete s; }

monopmf_status monopmf_estimate_risk(const monopmf_pmf* truth, uint64_t n, double k, monopmf_estimator est,
                                     uint64_t reps, uint64_t seed, double* mean, double* standard_error) {
  return guarded([&] {
    MONOPMF_REQUIRE(truth);
    MONOPMF_REQUIRE(mean);
    monopmf::EstimatorKind kind;
    if (!to_estimator(est, kind)) return fail(MONOPMF_E_INVALID_ARGUMENT, "unknown estimator");
    const auto r = monopmf::estimate_risk(truth->value, n, k, kind, reps, seed);
    *mean = r.mean;
    if (standard_error) *standard_error = r.se;
    return MONOPMF_OK;
  });
}

monopmf_status monopmf_fluctuations(const monopmf_pmf* truth, size_t x, uint64_t n, uint64_t reps, uint64_t seed,
                                    monopmf_estimator est, double* out) {
  return guarded([&] {
    MONOPMF_REQUIRE(truth);
    MONOPMF_REQUIRE(out);
    monopmf::EstimatorKind kind;
    if (!to_estimator(est, kind)) return fail(MONOPMF_E_INVALID_ARGUMENT, "unknown estimator");
    const auto cdf = monopmf::fluctuation_cdf(truth->value, x, n, reps, seed, kind);
    std::copy(cdf.values.begin(), cdf.values.end(), out);
    return MONOPMF_OK;
  });
}

}  // extern "C"
