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

#include "sixdma/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sixdma {
namespace {

Json vec3(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

Json points(const std::vector<Vec3>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(vec3(p));
  return out;
}

std::vector<Vec3> points(const Json& j) {
  std::vector<Vec3> out;
  for (const auto& p : j) out.push_back(vec3(p));
  return out;
}

Json real_vector(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json complex_vector(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v[i].real(), v[i].imag()}));
  return out;
}

CVector complex_vector(const Json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = {j[i].at(0).get<double>(), j[i].at(1).get<double>()};
  return v;
}

}  // namespace

Json to_json(const ScenarioConfig& c) {
  Json hotspots = Json::array();
  for (const auto& h : c.hotspots) hotspots.push_back({{"center", {h.center_x, h.center_y}}, {"radius", h.radius}});
  return {{"num_aps", c.num_aps},
          {"num_uts", c.num_uts},
          {"paths_per_link", c.paths_per_link},
          {"wavelength", c.wavelength},
          {"rician_factor", c.rician_factor},
          {"region_side", c.region_side},
          {"noise_dbm", c.noise_dbm},
          {"tx_power_dbm", c.tx_power_dbm},
          {"weights", c.weights},
          {"area_half_side", c.area_half_side},
          {"ap_ring_radius", c.ap_ring_radius},
          {"ap_height", c.ap_height},
          {"ut_height", c.ut_height},
          {"hotspots", hotspots},
          {"hotspot_fraction", c.hotspot_fraction},
          {"scatterer_min", vec3(c.scatterer_min)},
          {"scatterer_max", vec3(c.scatterer_max)},
          {"num_scatterers", c.num_scatterers},
          {"seed", c.seed}};
}

ScenarioConfig config_from_json(const Json& j) {
  ScenarioConfig c;
  c.num_aps = j.at("num_aps").get<int>();
  c.num_uts = j.at("num_uts").get<int>();
  c.paths_per_link = j.at("paths_per_link").get<int>();
  c.wavelength = j.at("wavelength").get<double>();
  c.rician_factor = j.at("rician_factor").get<double>();
  c.region_side = j.at("region_side").get<double>();
  c.noise_dbm = j.at("noise_dbm").get<double>();
  c.tx_power_dbm = j.at("tx_power_dbm").get<double>();
  c.weights = j.at("weights").get<std::vector<double>>();
  c.area_half_side = j.at("area_half_side").get<double>();
  c.ap_ring_radius = j.at("ap_ring_radius").get<double>();
  c.ap_height = j.at("ap_height").get<double>();
  c.ut_height = j.at("ut_height").get<double>();
  const Json& hs = j.at("hotspots");
  if (hs.size() != c.hotspots.size()) throw std::invalid_argument("config: expected two hotspots");
  for (std::size_t i = 0; i < c.hotspots.size(); ++i)
    c.hotspots[i] = Hotspot{hs[i].at("center").at(0).get<double>(), hs[i].at("center").at(1).get<double>(),
                            hs[i].at("radius").get<double>()};
  c.hotspot_fraction = j.at("hotspot_fraction").get<double>();
  c.scatterer_min = vec3(j.at("scatterer_min"));
  c.scatterer_max = vec3(j.at("scatterer_max"));
  c.num_scatterers = j.at("num_scatterers").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

Json to_json(const Scenario& s) {
  Json regions = Json::array();
  for (const auto& r : s.regions) regions.push_back({{"min", vec3(r.min)}, {"max", vec3(r.max)}});
  return {{"config", to_json(s.config)},
          {"ap_positions", points(s.ap_positions)},
          {"ut_positions", points(s.ut_positions)},
          {"scatterers", points(s.scatterers)},
          {"regions", regions}};
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  s.config = config_from_json(j.at("config"));
  s.config.validate();
  s.ap_positions = points(j.at("ap_positions"));
  s.ut_positions = points(j.at("ut_positions"));
  s.scatterers = points(j.at("scatterers"));
  for (const auto& r : j.at("regions")) s.regions.push_back(BoxRegion{vec3(r.at("min")), vec3(r.at("max"))});
  if (s.num_aps() != s.config.num_aps || s.num_uts() != s.config.num_uts ||
      static_cast<int>(s.regions.size()) != s.config.num_aps)
    throw std::invalid_argument("scenario: array sizes do not match the config");
  return s;
}

Json to_json(const PathSet& p) {
  Json fields = Json::array();
  for (Eigen::Index l = 0; l < p.fields.cols(); ++l) fields.push_back(vec3(Vec3(p.fields.col(l))));
  return {{"elevation", p.elevation},
          {"azimuth", p.azimuth},
          {"prv", complex_vector(p.prv)},
          {"fields", fields},
          {"distance", p.distance}};
}

PathSet path_set_from_json(const Json& j) {
  const Json& f = j.at("fields");
  Eigen::Matrix3Xd fields(3, static_cast<Eigen::Index>(f.size()));
  for (std::size_t l = 0; l < f.size(); ++l) fields.col(static_cast<Eigen::Index>(l)) = vec3(f[l]);
  return PathSet::from_angles(j.at("elevation").get<std::vector<double>>(), j.at("azimuth").get<std::vector<double>>(),
                              complex_vector(j.at("prv")), std::move(fields), j.at("distance").get<double>());
}

Json to_json(const PathTable& t) {
  Json links = Json::array();
  for (int m = 0; m < t.num_aps(); ++m) {
    Json row = Json::array();
    for (int k = 0; k < t.num_uts(); ++k) row.push_back(to_json(t.at(k, m)));
    links.push_back(std::move(row));
  }
  return {{"num_aps", t.num_aps()}, {"num_uts", t.num_uts()}, {"links", links}};
}

PathTable path_table_from_json(const Json& j) {
  PathTable t(j.at("num_aps").get<int>(), j.at("num_uts").get<int>());
  const Json& links = j.at("links");
  if (static_cast<int>(links.size()) != t.num_aps()) throw std::invalid_argument("paths: wrong number of APs");
  for (int m = 0; m < t.num_aps(); ++m) {
    const Json& row = links[static_cast<std::size_t>(m)];
    if (static_cast<int>(row.size()) != t.num_uts()) throw std::invalid_argument("paths: wrong number of UTs");
    for (int k = 0; k < t.num_uts(); ++k) t.at(k, m) = path_set_from_json(row[static_cast<std::size_t>(k)]);
  }
  return t;
}

Json to_json(const AntennaPose& pose) {
  Json frame = Json::array();
  for (Eigen::Index c = 0; c < pose.orientation.cols(); ++c) frame.push_back(vec3(Vec3(pose.orientation.col(c))));
  return {{"position", vec3(pose.position)}, {"orientation", frame}};
}

AntennaPose pose_from_json(const Json& j) {
  AntennaPose pose;
  pose.position = vec3(j.at("position"));
  const Json& cols = j.at("orientation");
  if (cols.size() < 2 || cols.size() > 3) throw std::invalid_argument("pose: orientation needs 2 or 3 columns");
  pose.orientation.resize(3, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) pose.orientation.col(static_cast<Eigen::Index>(c)) = vec3(cols[c]);
  return pose;
}

Json to_json(const Poses& poses) {
  Json out = Json::array();
  for (const auto& p : poses) out.push_back(to_json(p));
  return out;
}

Poses poses_from_json(const Json& j) {
  Poses out;
  for (const auto& p : j) out.push_back(pose_from_json(p));
  return out;
}

Json to_json(const SolveTrace& t) {
  Json iterations = Json::array();
  for (std::size_t i = 0; i < t.wsr.size(); ++i) {
    Json it = {{"wsr", t.wsr[i]}, {"rates", real_vector(t.rates[i])}, {"poses", to_json(t.poses[i])}};
    if (i < t.aux.size())
      it["aux"] = {{"alpha", real_vector(t.aux[i].alpha)}, {"beta", complex_vector(t.aux[i].beta)}};
    iterations.push_back(std::move(it));
  }
  return {{"outer_iterations", t.outer_iterations},
          {"iterations", iterations},
          {"position_traces", t.position_traces},
          {"surrogate_gains", t.surrogate_gains},
          {"orientation_traces", t.orientation_traces},
          {"timing_ms", {{"position", t.position_ms}, {"orientation", t.orientation_ms}, {"combiner", t.combiner_ms}}},
          {"max_orthonormality_error", t.max_orthonormality_error},
          {"max_combiner_regression", t.max_combiner_regression}};
}

Json to_json(const Metrics& m) {
  return {{"wsr_bps_hz", m.wsr},         {"initial_wsr_bps_hz", m.initial_wsr}, {"rates", real_vector(m.rates)},
          {"outer_iters", m.outer_iters}, {"wall_ms", m.wall_ms},                {"poses", to_json(m.poses)}};
}

Json replay_to_json(const Scenario& scenario, const PathTable& table) {
  return {{"scenario", to_json(scenario)}, {"paths", to_json(table)}};
}

std::pair<Scenario, PathTable> replay_from_json(const Json& j) {
  Scenario s = scenario_from_json(j.at("scenario"));
  PathTable t = path_table_from_json(j.at("paths"));
  if (t.num_aps() != s.num_aps() || t.num_uts() != s.num_uts())
    throw std::invalid_argument("replay: path table does not match the scenario");
  return {std::move(s), std::move(t)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace sixdma
