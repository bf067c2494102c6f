// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The sixdma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sixdma/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

namespace sixdma {
namespace {

constexpr double kSpeedOfLight = 3e8;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '[' || ch == ']' || ch == '"') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("plan key '" + key + "': not a number: '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument("plan key '" + key + "': not an integer: '" + text + "'");
  return static_cast<int>(v);
}

std::uint64_t to_seed(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("plan key 'seeds': not a non-negative integer: '" + text + "'");
  return std::stoull(text);
}

std::string single(const std::string& key, const std::string& value) {
  const auto parts = split_list(value);
  if (parts.size() != 1) throw std::invalid_argument("plan key '" + key + "' expects one value, got '" + value + "'");
  return parts.front();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from(const Json& j) { return j.is_null() ? kNaN : j.get<double>(); }

}  // namespace

ExperimentPlan::ExperimentPlan() {
  for (std::uint64_t s = 1; s <= 100; ++s) seeds.push_back(s);
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"num_uts", "num_aps", "tx_power_dbm", "prv_error_var", "mode"};
  return axes;
}

void ExperimentPlan::validate() const {
  if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end())
    throw std::invalid_argument("unknown sweep axis '" + axis + "'");
  if (values.empty()) throw std::invalid_argument("plan has no axis values");
  if (schemes.empty()) throw std::invalid_argument("plan has no schemes");
  if (seeds.empty()) throw std::invalid_argument("plan has no seeds");
  if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  for (const auto& v : values) {
    ScenarioConfig sc;
    SolverConfig so;
    configure_run(*this, v, seeds.front(), sc, so);
    sc.validate();
    so.validate();
  }
}

void apply_setting(ExperimentPlan& plan, const std::string& key, const std::string& value) {
  auto& sc = plan.scenario;
  auto& so = plan.solver;
  auto num = [&] { return to_double(key, single(key, value)); };
  auto integer = [&] { return to_int(key, single(key, value)); };
  if (key == "m") sc.num_aps = integer();
  else if (key == "k") sc.num_uts = integer();
  else if (key == "l") sc.paths_per_link = integer();
  else if (key == "fc_ghz") {
    const double fc = num();
    if (!(fc > 0.0)) throw std::invalid_argument("plan key 'fc_ghz' must be positive");
    sc.wavelength = kSpeedOfLight / (fc * 1e9);
  }
  else if (key == "region_side_lambda") sc.region_side = num();
  else if (key == "rician_factor") sc.rician_factor = num();
  else if (key == "noise_dbm") sc.noise_dbm = num();
  else if (key == "power_dbm") sc.tx_power_dbm = num();
  else if (key == "num_scatterers") sc.num_scatterers = integer();
  else if (key == "hotspot_fraction") sc.hotspot_fraction = num();
  else if (key == "eps1") so.eps1 = num();
  else if (key == "eps2") so.eps2 = num();
  else if (key == "eps3") so.eps3 = num();
  else if (key == "max_outer") so.max_outer = integer();
  else if (key == "max_position_iters") so.max_position_iters = integer();
  else if (key == "max_orientation_iters") so.max_orientation_iters = integer();
  else if (key == "mode") so.mode = polarization_from_string(single(key, value));
  else if (key == "offline_samples") so.offline_samples = integer();
  else if (key == "es_position_points") so.es_position_points = integer();
  else if (key == "es_orientation_points") so.es_orientation_points = integer();
  else if (key == "es_max_sweeps") so.es_max_sweeps = integer();
  else if (key == "prv_error") so.prv_error = num();
  else if (key == "axis") plan.axis = single(key, value);
  else if (key == "values") plan.values = split_list(value);
  else if (key == "schemes") {
    plan.schemes.clear();
    for (const auto& s : split_list(value)) plan.schemes.push_back(scheme_from_string(s));
  } else if (key == "seeds") {
    plan.seeds.clear();
    for (const auto& s : split_list(value)) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) {
        plan.seeds.push_back(to_seed(s));
        continue;
      }
      const std::uint64_t lo = to_seed(s.substr(0, colon)), hi = to_seed(s.substr(colon + 1));
      if (hi < lo || hi - lo > 1000000) throw std::invalid_argument("plan key 'seeds': bad range '" + s + "'");
      for (std::uint64_t x = lo; x <= hi; ++x) plan.seeds.push_back(x);
    }
  } else if (key == "output") plan.output = single(key, value);
  else if (key == "format") plan.format = single(key, value);
  else if (key == "jobs") plan.jobs = integer();
  else throw std::invalid_argument("unknown plan key '" + key + "'");
}

ExperimentPlan parse_plan(std::istream& in) {
  ExperimentPlan plan;
  const auto items = CLI::ConfigINI().from_config(in);
  for (const auto& item : items) {
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents.front() == "default"))
      throw std::invalid_argument("plan files have no sections (found [" + item.parents.front() + "])");
    if (item.name == "++" || item.name == "--") continue;   // section markers
    std::string joined;
    for (const auto& v : item.inputs) joined += (joined.empty() ? "" : ",") + v;
    apply_setting(plan, item.name, joined);
  }
  return plan;
}

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file '" + path + "'");
  return parse_plan(in);
}

void configure_run(const ExperimentPlan& plan, const std::string& axis_value, std::uint64_t seed,
                   ScenarioConfig& scenario, SolverConfig& solver) {
  scenario = plan.scenario;
  solver = plan.solver;
  scenario.seed = seed;
  const std::string& a = plan.axis;
  if (a == "num_uts") scenario.num_uts = to_int(a, axis_value);
  else if (a == "num_aps") scenario.num_aps = to_int(a, axis_value);
  else if (a == "tx_power_dbm") scenario.tx_power_dbm = to_double(a, axis_value);
  else if (a == "prv_error_var") solver.prv_error = to_double(a, axis_value);
  else if (a == "mode") solver.mode = polarization_from_string(axis_value);
  else throw std::invalid_argument("unknown sweep axis '" + a + "'");
}

std::pair<ResultRow, ResultRow> aggregate_rows(const std::vector<ResultRow>& rows) {
  ResultRow mean, err;
  if (!rows.empty()) {
    mean.scheme = err.scheme = rows.front().scheme;
    mean.axis_name = err.axis_name = rows.front().axis_name;
    mean.axis_value = err.axis_value = rows.front().axis_value;
  }
  mean.seed = "mean";
  err.seed = "stderr";
  std::vector<const ResultRow*> ok;
  for (const auto& r : rows)
    if (r.error.empty() && std::isfinite(r.wsr)) ok.push_back(&r);
  if (ok.empty()) {
    mean.wsr = mean.outer_iters = mean.wall_ms = kNaN;
    err.wsr = err.outer_iters = err.wall_ms = kNaN;
    mean.error = err.error = "no successful runs";
    return {mean, err};
  }
  const std::size_t rate_cols = ok.front()->rates.size();
  const auto n = static_cast<double>(ok.size());
  auto stats = [&](auto field, double& m, double& e) {
    double sum = 0.0;
    for (const auto* r : ok) sum += field(*r);
    m = sum / n;
    double sq = 0.0;
    for (const auto* r : ok) sq += (field(*r) - m) * (field(*r) - m);
    e = ok.size() > 1 ? std::sqrt(sq / (n - 1.0)) / std::sqrt(n) : 0.0;
  };
  stats([](const ResultRow& r) { return r.wsr; }, mean.wsr, err.wsr);
  stats([](const ResultRow& r) { return r.outer_iters; }, mean.outer_iters, err.outer_iters);
  stats([](const ResultRow& r) { return r.wall_ms; }, mean.wall_ms, err.wall_ms);
  mean.rates.assign(rate_cols, 0.0);
  err.rates.assign(rate_cols, 0.0);
  for (std::size_t c = 0; c < rate_cols; ++c)
    stats([c](const ResultRow& r) { return c < r.rates.size() ? r.rates[c] : kNaN; }, mean.rates[c], err.rates[c]);
  return {mean, err};
}

std::vector<ResultRow> run_plan(const ExperimentPlan& plan, const std::function<void(const ResultRow&)>& progress) {
  plan.validate();
  struct Job {
    std::string value;
    Scheme scheme;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& v : plan.values)
    for (Scheme s : plan.schemes)
      for (std::uint64_t seed : plan.seeds) jobs.push_back({v, s, seed});

  std::vector<ResultRow> raw(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      ResultRow row;
      row.scheme = to_string(job.scheme);
      row.axis_name = plan.axis;
      row.axis_value = job.value;
      row.seed = std::to_string(job.seed);
      try {
        ScenarioConfig sc;
        SolverConfig so;
        configure_run(plan, job.value, job.seed, sc, so);
        const Scenario scenario = generate_scenario(sc);
        const PathTable table = sample_path_table(scenario, 0);
        const SchemeRun run = run_scheme(job.scheme, scenario, table, so);
        row.wsr = run.metrics.wsr;
        row.outer_iters = run.metrics.outer_iters;
        row.wall_ms = run.metrics.wall_ms;
        row.rates.assign(run.metrics.rates.data(), run.metrics.rates.data() + run.metrics.rates.size());
      } catch (const std::exception& e) {
        row.wsr = kNaN;
        row.outer_iters = kNaN;
        row.wall_ms = kNaN;
        row.error = e.what();
      }
      raw[i] = std::move(row);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(raw[i]);
      }
    }
  };
  const int threads = std::min<int>(plan.jobs, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<ResultRow> out;
  const std::size_t per_group = plan.seeds.size();
  for (std::size_t g = 0; g < raw.size(); g += per_group) {
    const std::vector<ResultRow> group(raw.begin() + static_cast<std::ptrdiff_t>(g),
                                       raw.begin() + static_cast<std::ptrdiff_t>(g + per_group));
    out.insert(out.end(), group.begin(), group.end());
    auto [mean, err] = aggregate_rows(group);
    out.push_back(std::move(mean));
    out.push_back(std::move(err));
  }
  return out;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::size_t rate_cols = 1;
  for (const auto& r : rows) rate_cols = std::max(rate_cols, r.rates.size());
  std::ostringstream os;
  os << "scheme,axis_name,axis_value,seed,wsr_bps_hz,outer_iters,wall_ms";
  for (std::size_t c = 0; c < rate_cols; ++c) os << ",rate_ut" << c + 1;
  os << '\n';
  for (const auto& r : rows) {
    os << r.scheme << ',' << r.axis_name << ',' << r.axis_value << ',' << r.seed << ',' << format_number(r.wsr) << ','
       << format_number(r.outer_iters) << ',' << format_number(r.wall_ms);
    for (std::size_t c = 0; c < rate_cols; ++c) {
      os << ',';
      if (c < r.rates.size()) os << format_number(r.rates[c]);
    }
    os << '\n';
  }
  return os.str();
}

Json results_to_json(const std::vector<ResultRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json rates = Json::array();
    for (double v : r.rates) rates.push_back(number_or_null(v));
    Json row = {{"scheme", r.scheme},
                {"axis_name", r.axis_name},
                {"axis_value", r.axis_value},
                {"seed", r.seed},
                {"wsr_bps_hz", number_or_null(r.wsr)},
                {"outer_iters", number_or_null(r.outer_iters)},
                {"wall_ms", number_or_null(r.wall_ms)},
                {"rates", rates}};
    if (!r.error.empty()) row["error"] = r.error;
    out.push_back(std::move(row));
  }
  return {{"rows", out}};
}

std::vector<ResultRow> results_from_json(const Json& j) {
  std::vector<ResultRow> rows;
  for (const auto& x : j.at("rows")) {
    ResultRow r;
    r.scheme = x.at("scheme").get<std::string>();
    r.axis_name = x.at("axis_name").get<std::string>();
    r.axis_value = x.at("axis_value").get<std::string>();
    r.seed = x.at("seed").get<std::string>();
    r.wsr = number_from(x.at("wsr_bps_hz"));
    r.outer_iters = number_from(x.at("outer_iters"));
    r.wall_ms = number_from(x.at("wall_ms"));
    for (const auto& v : x.at("rates")) r.rates.push_back(number_from(v));
    if (x.contains("error")) r.error = x.at("error").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string resolve_output_path(const std::string& output) {
  const char* dir = std::getenv("SIXDMA_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return output;
  return (std::filesystem::path(dir) / std::filesystem::path(output).filename()).string();
}

void emit(const std::vector<ResultRow>& rows, const std::string& format, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit: no result rows");
  if (format == "csv") write_file(path, to_csv(rows));
  else if (format == "json") write_file(path, results_to_json(rows).dump(2) + "\n");
  else throw std::invalid_argument("emit: unknown format '" + format + "'");
}

}  // namespace sixdma
