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
/* monopmf - command-line front end over the C API.
 *
 * Exit codes: 0 success, 1 usage error (bad flags or truth specs),
 * 2 input data error (unreadable or invalid files).
 */
#include "monopmf/monopmf.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct Exit {
  int code;
  std::string message;
};

void check(monopmf_status status, int code, const std::string& context) {
  if (status == MONOPMF_OK) return;
  throw Exit{code, context + ": " + monopmf_last_error()};
}

struct PmfDeleter {
  void operator()(monopmf_pmf* p) const { monopmf_pmf_free(p); }
};
struct CountsDeleter {
  void operator()(monopmf_counts* c) const { monopmf_counts_free(c); }
};
struct SummaryDeleter {
  void operator()(monopmf_summary* s) const { monopmf_summary_free(s); }
};
using PmfPtr = std::unique_ptr<monopmf_pmf, PmfDeleter>;
using CountsPtr = std::unique_ptr<monopmf_counts, CountsDeleter>;
using SummaryPtr = std::unique_ptr<monopmf_summary, SummaryDeleter>;

std::string fmt(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}
std::string g17(double v) { return fmt(v, 17); }
std::string g5(double v) { return fmt(v, 5); }

PmfPtr truth_from_spec(const std::string& spec) {
  monopmf_pmf* p = nullptr;
  check(monopmf_pmf_from_spec(spec.c_str(), &p), kUsageError, "--truth '" + spec + "'");
  return PmfPtr(p);
}

PmfPtr truth_from_file(const std::string& path) {
  monopmf_pmf* p = nullptr;
  check(monopmf_pmf_read(path.c_str(), 1, &p), kDataError, path);
  return PmfPtr(p);
}

std::vector<double> pmf_values(const monopmf_pmf* p) {
  std::vector<double> v(monopmf_pmf_size(p));
  size_t len = 0;
  check(monopmf_pmf_values(p, v.data(), v.size(), &len), kDataError, "pmf");
  return v;
}

CountsPtr read_counts(const std::string& path) {
  monopmf_counts* c = nullptr;
  check(monopmf_counts_read(path.c_str(), &c), kDataError, path);
  return CountsPtr(c);
}

struct NamedEstimator {
  const char* name;
  monopmf_estimator kind;
};
constexpr NamedEstimator kEstimators[] = {
    {"empirical", MONOPMF_EMPIRICAL}, {"rear", MONOPMF_REARRANGEMENT}, {"gren", MONOPMF_GRENANDER}};

std::vector<NamedEstimator> select_estimators(const std::string& choice) {
  if (choice == "all") return {std::begin(kEstimators), std::end(kEstimators)};
  std::vector<NamedEstimator> out;
  std::stringstream ss(choice);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "emp") item = "empirical";
    if (item == "rearrangement") item = "rear";
    if (item == "grenander") item = "gren";
    bool found = false;
    for (const auto& e : kEstimators) {
      if (item == e.name) {
        out.push_back(e);
        found = true;
      }
    }
    if (!found) throw Exit{kUsageError, "unknown estimator '" + item + "'"};
  }
  if (out.empty()) throw Exit{kUsageError, "no estimator selected"};
  return out;
}

std::vector<double> estimate(const monopmf_counts* c, monopmf_estimator kind) {
  std::vector<double> out(monopmf_counts_size(c));
  size_t len = 0;
  check(monopmf_estimate(c, kind, out.data(), out.size(), &len), kDataError, "estimate");
  return out;
}

double distance(const std::vector<double>& a, const std::vector<double>& b, const char* metric) {
  double d = 0.0;
  check(monopmf_distance(a.data(), a.size(), b.data(), b.size(), metric, &d), kDataError, metric);
  return d;
}

void write_sequence(const std::vector<double>& v, const std::string& path) {
  check(monopmf_sequence_write(v.data(), v.size(), path.c_str()), kDataError, path);
}

void print_table(const std::vector<NamedEstimator>& ests, const std::vector<std::vector<double>>& cols) {
  std::size_t len = 0;
  for (const auto& c : cols) len = std::max(len, c.size());
  std::cout << "x";
  for (const auto& e : ests) std::cout << '\t' << e.name;
  std::cout << '\n';
  for (std::size_t x = 0; x < len; ++x) {
    std::cout << x;
    for (const auto& c : cols) std::cout << '\t' << g17(x < c.size() ? c[x] : 0.0);
    std::cout << '\n';
  }
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string counts;
  std::string estimator = "all";
  std::string out;
  std::string truth;
};

void run_estimate(const EstimateArgs& a) {
  auto counts = read_counts(a.counts);
  const auto ests = select_estimators(a.estimator);
  std::vector<std::vector<double>> cols;
  for (const auto& e : ests) cols.push_back(estimate(counts.get(), e.kind));

  if (ests.size() == 1) {
    if (a.out.empty()) {
      for (std::size_t x = 0; x < cols[0].size(); ++x) std::cout << x << '\t' << g17(cols[0][x]) << '\n';
    } else {
      write_sequence(cols[0], a.out);
    }
  } else if (!a.out.empty()) {
    for (std::size_t i = 0; i < ests.size(); ++i) write_sequence(cols[i], a.out + "." + ests[i].name + ".pmf");
  } else {
    print_table(ests, cols);
  }

  if (!a.truth.empty()) {
    const auto truth = pmf_values(truth_from_file(a.truth).get());
    static constexpr const char* kMetrics[] = {"hellinger", "l1", "l2", "linf"};
    std::cout << "estimator";
    for (const char* m : kMetrics) std::cout << '\t' << m;
    std::cout << '\n';
    for (std::size_t i = 0; i < ests.size(); ++i) {
      std::cout << ests[i].name;
      for (const char* m : kMetrics) std::cout << '\t' << g5(distance(cols[i], truth, m));
      std::cout << '\n';
    }
  }
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string truth;
  uint64_t n = 100;
  uint64_t reps = 1000;
  uint64_t seed = 1;
  std::string target = "pmf";
  std::string estimators;
  std::string metrics = "hellinger,l1,l2,linf";
  std::string out = "monopmf_sim";
  unsigned threads = 0;
};

void apply_config_file(SimulateArgs& a, const CLI::App& cmd) {
  nlohmann::json j;
  try {
    std::ifstream in(a.config);
    if (!in) throw Exit{kDataError, a.config + ": cannot open"};
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Exit{kDataError, a.config + ": " + e.what()};
  }
  // Explicit flags win over the file.
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (j.contains(key) && cmd.count(flag) == 0) {
      try {
        j.at(key).get_to(field);
      } catch (const nlohmann::json::exception& e) {
        throw Exit{kDataError, a.config + ": field '" + key + "': " + e.what()};
      }
    }
  };
  take("truth", "--truth", a.truth);
  take("n", "--n", a.n);
  take("reps", "--reps", a.reps);
  take("seed", "--seed", a.seed);
  take("target", "--target", a.target);
  take("estimators", "--estimators", a.estimators);
  take("metrics", "--metrics", a.metrics);
  take("out", "--out", a.out);
  take("threads", "--threads", a.threads);
}

void run_simulate(SimulateArgs a, const CLI::App& cmd) {
  if (!a.config.empty()) apply_config_file(a, cmd);
  if (a.truth.empty()) throw Exit{kUsageError, "--truth is required"};
  auto truth = truth_from_spec(a.truth);
  monopmf_target target;
  if (a.target == "pmf") {
    target = MONOPMF_TARGET_PMF;
  } else if (a.target == "mixing") {
    target = MONOPMF_TARGET_MIXING;
  } else {
    throw Exit{kUsageError, "--target must be pmf or mixing"};
  }
  if (a.estimators.empty()) a.estimators = target == MONOPMF_TARGET_MIXING ? "rear,gren" : "all";
  const auto ests = select_estimators(a.estimators);
  std::vector<monopmf_estimator> kinds;
  for (const auto& e : ests) kinds.push_back(e.kind);

  monopmf_experiment_config cfg{};
  cfg.truth = truth.get();
  cfg.truth_label = a.truth.c_str();
  cfg.n = a.n;
  cfg.reps = a.reps;
  cfg.seed = a.seed;
  cfg.estimators = kinds.data();
  cfg.estimator_count = kinds.size();
  cfg.metrics = a.metrics.c_str();
  cfg.target = target;
  cfg.threads = a.threads;
  monopmf_summary* raw = nullptr;
  check(monopmf_run_experiment(&cfg, &raw), kUsageError, "simulate");
  SummaryPtr summary(raw);

  const std::string raw_path = a.out + "_raw.csv";
  const std::string summary_path = a.out + "_summary.csv";
  const std::string meta_path = a.out + "_meta.json";
  check(monopmf_summary_write_raw_csv(summary.get(), raw_path.c_str()), kDataError, raw_path);
  check(monopmf_summary_write_csv(summary.get(), summary_path.c_str()), kDataError, summary_path);
  check(monopmf_summary_write_metadata(summary.get(), meta_path.c_str()), kDataError, meta_path);

  std::vector<std::string> metric_names;
  {
    std::stringstream ss(a.metrics);
    std::string item;
    while (std::getline(ss, item, ',')) if (!item.empty()) metric_names.push_back(item);
  }
  std::cout << "estimator\tmetric\tmean\tsd\tmedian\n";
  for (std::size_t e = 0; e < ests.size(); ++e) {
    for (std::size_t m = 0; m < metric_names.size(); ++m) {
      monopmf_distance_stats st{};
      check(monopmf_summary_stats(summary.get(), e, m, &st), kDataError, "summary");
      std::cout << ests[e].name << '\t' << metric_names[m] << '\t' << g5(st.mean) << '\t' << g5(st.sd) << '\t'
                << g5(st.median) << '\n';
    }
  }
  monopmf_run_counters counters{};
  check(monopmf_summary_counters(summary.get(), &counters), kDataError, "summary");
  std::cout << "monotone_replicates=" << counters.monotone_replicates
            << " inequality_violations=" << counters.inequality_violations
            << " invalid_mixing_rows=" << counters.invalid_mixing_rows << '\n';
  std::cout << "wrote " << raw_path << ", " << summary_path << ", " << meta_path << '\n';
}

// ---- risk -----------------------------------------------------------------

struct RiskArgs {
  std::string truth;
  uint64_t n = 100;
  std::string k = "2";
  std::string estimator = "empirical";
  uint64_t reps = 10000;
  uint64_t seed = 1;
};

void run_risk(const RiskArgs& a) {
  auto truth = truth_from_spec(a.truth);
  double k = 0.0;
  if (a.k == "inf") {
    k = std::numeric_limits<double>::infinity();
  } else {
    try {
      std::size_t pos = 0;
      k = std::stod(a.k, &pos);
      if (pos != a.k.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Exit{kUsageError, "--k must be a number >= 1 or 'inf'"};
    }
  }
  const auto ests = select_estimators(a.estimator);
  std::cout << "estimator\tk\trisk\tse\tscaled_risk\n";
  for (const auto& e : ests) {
    double mean = 0.0, se = 0.0;
    check(monopmf_estimate_risk(truth.get(), a.n, k, e.kind, a.reps, a.seed, &mean, &se), kUsageError, "risk");
    const double scale = std::pow(static_cast<double>(a.n), (std::isinf(k) ? 1.0 : k) / 2.0);
    std::cout << e.name << '\t' << a.k << '\t' << g17(mean) << '\t' << g17(se) << '\t' << g17(scale * mean) << '\n';
  }
}

// ---- limits ---------------------------------------------------------------

struct LimitsArgs {
  std::string truth;
  uint64_t draws = 1000;
  uint64_t seed = 1;
  std::string out = "limits.csv";
  std::string aggregate;
};

void run_limits(const LimitsArgs& a) {
  auto truth = truth_from_spec(a.truth);
  const std::string aggregate = a.aggregate.empty() ? a.out + ".aggregate.csv" : a.aggregate;
  check(monopmf_limits_write(truth.get(), a.draws, a.seed, a.out.c_str(), aggregate.c_str()), kUsageError, "limits");
  std::cout << "wrote " << a.out << ", " << aggregate << '\n';
}

// ---- asymptotics ----------------------------------------------------------

struct AsymptoticsArgs {
  std::string truth;
  std::string pmf;
};

void run_asymptotics(const AsymptoticsArgs& a) {
  if (a.truth.empty() == a.pmf.empty()) throw Exit{kUsageError, "give exactly one of --truth or --pmf"};
  auto truth = a.truth.empty() ? truth_from_file(a.pmf) : truth_from_spec(a.truth);
  const int code = a.truth.empty() ? kDataError : kUsageError;
  monopmf_asymptotics r{};
  check(monopmf_asymptotics_compute(truth.get(), &r), code, "asymptotics");
  std::vector<size_t> first(r.block_count), last(r.block_count);
  size_t count = 0;
  check(monopmf_constancy_blocks(truth.get(), first.data(), last.data(), first.size(), &count), code, "asymptotics");
  const auto p = pmf_values(truth.get());

  std::cout << "kappa=" << r.kappa << '\n'
            << "e_sq_l2_emp=" << fmt(r.e_sq_l2_emp, 6) << '\n'
            << "e_sq_l2_rear=" << fmt(r.e_sq_l2_emp, 6) << '\n'
            << "e_sq_l2_gren=" << fmt(r.e_sq_l2_gren, 6) << '\n'
            << "l2_gap=" << fmt(r.e_sq_l2_emp - r.e_sq_l2_gren, 6) << '\n'
            << "e_hell_emp=" << fmt(r.e_hell_emp, 6) << '\n'
            << "e_hell_gren=" << fmt(r.e_hell_gren, 6) << '\n'
            << "hell_gap=" << fmt(r.e_hell_emp - r.e_hell_gren, 6) << '\n'
            << "e_l1_emp=" << fmt(r.e_l1_emp, 6) << '\n'
            << "blocks=" << count << '\n';
  for (std::size_t i = 0; i < count; ++i) {
    std::cout << "block" << i << ".first=" << first[i] << '\n'
              << "block" << i << ".length=" << (last[i] - first[i] + 1) << '\n'
              << "block" << i << ".theta=" << fmt(p[first[i]], 6) << '\n';
  }
}

// ---- mixing ---------------------------------------------------------------

struct MixingArgs {
  std::string counts;
  std::string truth;
  std::string estimator = "all";
  std::string out;
};

std::vector<double> mixing_of(const std::vector<double>& p) {
  std::vector<double> q(p.size());
  check(monopmf_mixing(p.data(), p.size(), q.data()), kDataError, "mixing");
  return q;
}

void run_mixing(const MixingArgs& a) {
  if (a.counts.empty() == a.truth.empty()) throw Exit{kUsageError, "give exactly one of --counts or --truth"};
  if (!a.truth.empty()) {
    const auto q = mixing_of(pmf_values(truth_from_spec(a.truth).get()));
    if (!a.out.empty()) {
      write_sequence(q, a.out);
    } else {
      for (std::size_t x = 0; x < q.size(); ++x) std::cout << x << '\t' << g17(q[x]) << '\n';
    }
    return;
  }
  auto counts = read_counts(a.counts);
  const auto ests = select_estimators(a.estimator);
  std::vector<std::vector<double>> cols;
  for (const auto& e : ests) cols.push_back(mixing_of(estimate(counts.get(), e.kind)));
  if (!a.out.empty()) {
    if (ests.size() == 1) {
      write_sequence(cols[0], a.out);
    } else {
      for (std::size_t i = 0; i < ests.size(); ++i) write_sequence(cols[i], a.out + "." + ests[i].name + ".mix");
    }
  } else {
    print_table(ests, cols);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimate and study non-increasing probability mass functions"};
  app.set_version_flag("--version", std::string("monopmf ") + monopmf_version());
  app.require_subcommand(1);

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Empirical, rearrangement and Grenander estimates from counts");
  c_est->add_option("--counts", est.counts, "Counts file (x<TAB>count)")->required();
  c_est->add_option("--estimator", est.estimator, "empirical | rear | gren | all")
      ->check(CLI::IsMember({"empirical", "emp", "rear", "rearrangement", "gren", "grenander", "all"}));
  c_est->add_option("--out", est.out, "Output file (single estimator) or path stem (all)");
  c_est->add_option("--truth", est.truth, "Truth pmf file; prints a distance table");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo comparison of the estimators");
  c_sim->add_option("--config", sim.config, "JSON file with the same fields as the flags");
  c_sim->add_option("--truth", sim.truth, "uniform:y | geometric:theta | mixture:w1:y1,w2:y2,... | values:p0,p1,...");
  c_sim->add_option("--n", sim.n, "Sample size")->check(CLI::PositiveNumber);
  c_sim->add_option("--reps", sim.reps, "Replicates")->check(CLI::PositiveNumber);
  c_sim->add_option("--seed", sim.seed, "Seed");
  c_sim->add_option("--target", sim.target, "pmf | mixing");
  c_sim->add_option("--estimators", sim.estimators, "Comma list or 'all' (default: all; rear,gren for mixing)");
  c_sim->add_option("--metrics", sim.metrics, "Comma list of hellinger, l1, l2, linf, l<k>");
  c_sim->add_option("--out", sim.out, "Output prefix for _raw.csv, _summary.csv, _meta.json");
  c_sim->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");

  RiskArgs risk;
  auto* c_risk = app.add_subcommand("risk", "Monte Carlo risk E sum |p~ - p|^k");
  c_risk->add_option("--truth", risk.truth, "Truth spec")->required();
  c_risk->add_option("--n", risk.n, "Sample size")->check(CLI::PositiveNumber);
  c_risk->add_option("--k", risk.k, "Loss order (>= 1 or inf)");
  c_risk->add_option("--estimator", risk.estimator, "empirical | rear | gren | all");
  c_risk->add_option("--reps", risk.reps, "Replicates")->check(CLI::PositiveNumber);
  c_risk->add_option("--seed", risk.seed, "Seed");

  LimitsArgs lim;
  auto* c_lim = app.add_subcommand("limits", "Draws of the limit process (Y, Y^R, Y^G)");
  c_lim->add_option("--truth", lim.truth, "Truth spec (non-increasing)")->required();
  c_lim->add_option("--draws", lim.draws, "Number of draws")->check(CLI::PositiveNumber);
  c_lim->add_option("--seed", lim.seed, "Seed");
  c_lim->add_option("--out", lim.out, "Per-draw CSV (draw,x,y,y_rear,y_gren)");
  c_lim->add_option("--aggregate", lim.aggregate, "Per-coordinate aggregate CSV (default <out>.aggregate.csv)");

  AsymptoticsArgs asy;
  auto* c_asy = app.add_subcommand("asymptotics", "Closed-form asymptotic efficiencies");
  c_asy->add_option("--truth", asy.truth, "Truth spec (non-increasing)");
  c_asy->add_option("--pmf", asy.pmf, "Truth pmf file");

  MixingArgs mix;
  auto* c_mix = app.add_subcommand("mixing", "Mixing weights q_x = -(x+1)(p_{x+1} - p_x)");
  c_mix->add_option("--counts", mix.counts, "Counts file");
  c_mix->add_option("--truth", mix.truth, "Truth spec");
  c_mix->add_option("--estimator", mix.estimator, "empirical | rear | gren | all");
  c_mix->add_option("--out", mix.out, "Output file (single) or path stem (all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (c_est->parsed()) run_estimate(est);
    else if (c_sim->parsed()) run_simulate(sim, *c_sim);
    else if (c_risk->parsed()) run_risk(risk);
    else if (c_lim->parsed()) run_limits(lim);
    else if (c_asy->parsed()) run_asymptotics(asy);
    else if (c_mix->parsed()) run_mixing(mix);
  } catch (const Exit& e) {
    std::cerr << "monopmf: " << e.message << '\n';
    return e.code;
  }
  return 0;
}
