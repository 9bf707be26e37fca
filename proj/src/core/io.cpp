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
#include "core/io.hpp"

#include "core/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace monopmf::io {

namespace {

template <class T>
T parse_number(std::string_view s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("line " + std::to_string(line) + ": cannot parse '" + std::string(s) + "'");
  return v;
}

// Parses "x<TAB>value" lines, enforcing x = 0, 1, 2, ... Blank lines are skipped.
template <class T>
std::vector<T> parse_indexed(std::string_view text) {
  std::vector<T> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected '<x><TAB><value>'");
    const auto x = parse_number<std::size_t>(line.substr(0, tab), line_no);
    if (x != out.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected x = " + std::to_string(out.size()));
    out.push_back(parse_number<T>(line.substr(tab + 1), line_no));
  }
  if (out.empty()) throw ParseError("no data lines");
  return out;
}

}  // namespace

std::string format_g17(double v) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_short(double v, int digits) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_pmf_text(std::string_view text) {
  auto v = parse_indexed<double>(text);
  for (double p : v)
    if (!std::isfinite(p)) throw ParseError("non-finite probability");
  return v;
}

std::vector<std::uint64_t> parse_counts_text(std::string_view text) {
  return parse_indexed<std::uint64_t>(text);
}

std::string pmf_text(std::span<const double> probs) {
  std::string out;
  for (std::size_t x = 0; x < probs.size(); ++x) out += std::to_string(x) + "\t" + format_g17(probs[x]) + "\n";
  return out;
}

std::string counts_text(std::span<const std::uint64_t> counts) {
  std::string out;
  for (std::size_t x = 0; x < counts.size(); ++x) out += std::to_string(x) + "\t" + std::to_string(counts[x]) + "\n";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("error writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto '" + path.string() + "'");
  }
}

std::vector<double> read_pmf_values(const std::filesystem::path& path) {
  try {
    return parse_pmf_text(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Pmf read_pmf(const std::filesystem::path& path, bool monotone) {
  return Pmf::from_probs(read_pmf_values(path), monotone);
}

Counts read_counts(const std::filesystem::path& path) {
  try {
    return Counts::from_counts(parse_counts_text(read_file(path)));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string experiment_raw_csv(const ExperimentSummary& s) {
  std::string out = "replicate,estimator,metric,value\n";
  const auto& cfg = s.config;
  std::vector<std::string> metric_names;
  for (const auto& m : cfg.metrics) metric_names.push_back(m.name());
  for (std::size_t r = 0; r < cfg.reps; ++r)
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e)
      for (std::size_t m = 0; m < cfg.metrics.size(); ++m) {
        out += std::to_string(r);
        out += ',';
        out += estimator_name(cfg.estimators[e]);
        out += ',';
        out += metric_names[m];
        out += ',';
        out += format_g17(s.value(r, e, m));
        out += '\n';
      }
  return out;
}

std::string experiment_summary_csv(const ExperimentSummary& s) {
  std::string out = "estimator,metric,mean,sd,min,q1,median,q3,max\n";
  const auto& cfg = s.config;
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e)
    for (std::size_t m = 0; m < cfg.metrics.size(); ++m) {
      const auto& st = s.stat(e, m);
      out += std::string(estimator_name(cfg.estimators[e])) + "," + cfg.metrics[m].name();
      for (double v : {st.mean, st.sd, st.min, st.q1, st.median, st.q3, st.max}) out += "," + format_g17(v);
      out += "\n";
    }
  return out;
}

std::string experiment_metadata_json(const ExperimentSummary& s) {
  const auto& cfg = s.config;
  nlohmann::ordered_json j;
  j["library"] = "monopmf";
  j["version"] = MONOPMF_VERSION_STRING;
  nlohmann::ordered_json c;
  c["truth"] = cfg.truth_label;
  c["truth_pmf"] = cfg.truth.values();
  c["n"] = cfg.n;
  c["reps"] = cfg.reps;
  c["seed"] = cfg.seed;
  c["target"] = target_name(cfg.target);
  auto& est = c["estimators"] = nlohmann::ordered_json::array();
  for (auto e : cfg.estimators) est.push_back(estimator_name(e));
  auto& met = c["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : cfg.metrics) met.push_back(m.name());
  c["first_replicate_counts_injected"] = cfg.first_replicate_counts.has_value();
  j["config"] = c;
  j["quantiles"] = kQuantileDefinition;
  j["seeding"] = "replicate r uses derive_seed(seed, r)";
  j["monotone_replicates"] = s.monotone_replicates;
  j["inequality_violations"] = s.inequality_violations;
  j["coincidence_violations"] = s.coincidence_violations;
  j["invalid_mixing_rows"] = s.invalid_mixing_rows;
  return j.dump(2) + "\n";
}

std::string limit_draw_rows(std::size_t draw, const LimitDraw& d) {
  std::string out;
  for (std::size_t x = 0; x < d.y.size(); ++x) {
    out += std::to_string(draw) + "," + std::to_string(x) + "," + format_g17(d.y[x]) + "," +
           format_g17(d.y_rear[x]) + "," + format_g17(d.y_gren[x]) + "\n";
  }
  return out;
}

std::string limit_aggregate_csv(const Pmf& p, const LimitBatchSummary& s) {
  std::string out = "x,p,var_theory,mean_y,mean_y_rear,mean_y_gren,mean_sq_y,mean_sq_y_rear,mean_sq_y_gren\n";
  for (std::size_t x = 0; x < p.size(); ++x) {
    out += std::to_string(x);
    for (double v : {p[x], p[x] * (1.0 - p[x]), s.mean_y[x], s.mean_y_rear[x], s.mean_y_gren[x], s.mean_sq_y[x],
                     s.mean_sq_y_rear[x], s.mean_sq_y_gren[x]})
      out += "," + format_g17(v);
    out += "\n";
  }
  return out;
}

}  // namespace monopmf::io
