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

#include "sixdma/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sixdma {

Vec3 wave_vector(double elevation, double azimuth) {
  const double ce = std::cos(elevation);
  return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

double ScenarioConfig::normalized_noise() const { return std::pow(10.0, (noise_dbm - tx_power_dbm) / 10.0); }

double ScenarioConfig::weight(int k) const {
  return weights.empty() ? 1.0 : weights[static_cast<std::size_t>(k)];
}

RVector ScenarioConfig::weight_vector() const {
  RVector w(num_uts);
  for (int k = 0; k < num_uts; ++k) w[k] = weight(k);
  return w;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid scenario config: " + what); };
  if (num_aps < 1) fail("num_aps must be >= 1");
  if (num_uts < 1) fail("num_uts must be >= 1");
  if (paths_per_link < 1) fail("paths_per_link must be >= 1");
  if (!(wavelength > 0.0)) fail("wavelength must be > 0");
  if (!(rician_factor > 0.0)) fail("rician_factor must be > 0");
  if (!(region_side > 0.0)) fail("region_side must be > 0");
  if (!weights.empty()) {
    if (static_cast<int>(weights.size()) != num_uts) fail("weights must have num_uts entries");
    for (double w : weights)
      if (!(w > 0.0)) fail("weights must be strictly positive");
  }
  if (!(hotspot_fraction >= 0.0 && hotspot_fraction <= 1.0)) fail("hotspot_fraction must lie in [0, 1]");
  for (const auto& h : hotspots)
    if (!(h.radius > 0.0)) fail("hotspot radius must be > 0");
  const double dx = hotspots[0].center_x - hotspots[1].center_x;
  const double dy = hotspots[0].center_y - hotspots[1].center_y;
  if (std::hypot(dx, dy) < hotspots[0].radius + hotspots[1].radius) fail("hotspot sub-regions overlap");
  if (!(area_half_side > 0.0)) fail("area_half_side must be > 0");
  if (num_scatterers < 1 && paths_per_link > 1) fail("num_scatterers must be >= 1 when paths_per_link > 1");
  if (!(scatterer_min.array() < scatterer_max.array()).all()) fail("scatterer cuboid must have min < max");
}

PathSet PathSet::from_angles(std::vector<double> elevation, std::vector<double> azimuth, CVector prv,
                             Eigen::Matrix3Xd fields, double distance) {
  const auto n = elevation.size();
  if (azimuth.size() != n || static_cast<std::size_t>(prv.size()) != n || static_cast<std::size_t>(fields.cols()) != n)
    throw std::invalid_argument("PathSet: inconsistent path counts");
  if (!(distance > 0.0)) throw std::invalid_argument("PathSet: link distance must be > 0");
  PathSet p;
  p.directions.resize(3, static_cast<Eigen::Index>(n));
  for (std::size_t l = 0; l < n; ++l) p.directions.col(static_cast<Eigen::Index>(l)) = wave_vector(elevation[l], azimuth[l]);
  p.elevation = std::move(elevation);
  p.azimuth = std::move(azimuth);
  p.prv = std::move(prv);
  p.fields = std::move(fields);
  p.distance = distance;
  return p;
}

PathTable PathTable::permuted_uts(const std::vector<int>& order) const {
  PathTable out(num_aps_, static_cast<int>(order.size()));
  for (int m = 0; m < num_aps_; ++m)
    for (std::size_t j = 0; j < order.size(); ++j) out.at(static_cast<int>(j), m) = at(order[j], m);
  return out;
}

bool in_hotspot(const ScenarioConfig& cfg, double x, double y) {
  for (const auto& h : cfg.hotspots)
    if (std::hypot(x - h.center_x, y - h.center_y) <= h.radius) return true;
  return false;
}

namespace {

enum Stream : std::uint64_t { kPlacement = 1, kPaths = 2 };

Vec3 point_in_disc(const Hotspot& h, double height, Rng& rng) {
  // Area-uniform sampling: radius ~ R sqrt(U).
  const double r = h.radius * std::sqrt(rng.uniform());
  const double t = 2.0 * std::numbers::pi * rng.uniform();
  return {h.center_x + r * std::cos(t), h.center_y + r * std::sin(t), height};
}

}  // namespace

Scenario generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Scenario s;
  s.config = cfg;
  Rng rng(derive_seed(cfg.seed, kPlacement));

  const double side = cfg.region_side * cfg.wavelength;
  for (int m = 0; m < cfg.num_aps; ++m) {
    const double angle = 2.0 * std::numbers::pi * m / cfg.num_aps;
    s.ap_positions.emplace_back(cfg.ap_ring_radius * std::cos(angle), cfg.ap_ring_radius * std::sin(angle),
                                cfg.ap_height);
    s.regions.push_back(BoxRegion{Vec3::Zero(), Vec3::Constant(side)});
  }

  for (int k = 0; k < cfg.num_uts; ++k) {
    if (rng.uniform() < cfg.hotspot_fraction) {
      const auto& h = cfg.hotspots[rng.index(cfg.hotspots.size())];
      s.ut_positions.push_back(point_in_disc(h, cfg.ut_height, rng));
    } else {
      Vec3 p;
      do {
        p = {rng.uniform(-cfg.area_half_side, cfg.area_half_side), rng.uniform(-cfg.area_half_side, cfg.area_half_side),
             cfg.ut_height};
      } while (in_hotspot(cfg, p.x(), p.y()));
      s.ut_positions.push_back(p);
    }
  }

  for (int i = 0; i < cfg.num_scatterers; ++i) {
    Vec3 p;
    for (int a = 0; a < 3; ++a) p[a] = rng.uniform(cfg.scatterer_min[a], cfg.scatterer_max[a]);
    s.scatterers.push_back(p);
  }
  return s;
}

namespace {

void direction_angles(const Vec3& from, const Vec3& to, double& elevation, double& azimuth) {
  const Vec3 d = (to - from).normalized();
  elevation = std::asin(std::clamp(d.z(), -1.0, 1.0));
  azimuth = std::atan2(d.y(), d.x());
}

// Unit vector in the plane orthogonal to d(elevation, azimuth), uniform in angle.
Vec3 transverse_field(double elevation, double azimuth, Rng& rng) {
  const double se = std::sin(elevation), ce = std::cos(elevation);
  const double sa = std::sin(azimuth), ca = std::cos(azimuth);
  const Vec3 e_theta(-se * ca, -se * sa, ce);
  const Vec3 e_phi(-sa, ca, 0.0);
  const double zeta = 2.0 * std::numbers::pi * rng.uniform();
  return std::cos(zeta) * e_theta + std::sin(zeta) * e_phi;
}

}  // namespace

PathSet sample_paths(const Scenario& scenario, int k, int m, Rng& rng) {
  const auto& cfg = scenario.config;
  const int num_paths = cfg.paths_per_link;
  const Vec3& ap = scenario.ap_positions[static_cast<std::size_t>(m)];
  const Vec3& ut = scenario.ut_positions[static_cast<std::size_t>(k)];

  std::vector<double> elevation(static_cast<std::size_t>(num_paths)), azimuth(static_cast<std::size_t>(num_paths));
  CVector prv(num_paths);
  Eigen::Matrix3Xd fields(3, num_paths);

  const double chi = cfg.rician_factor;
  for (int l = 0; l < num_paths; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    if (l == 0) {
      direction_angles(ap, ut, elevation[ul], azimuth[ul]);
      prv[l] = rng.complex_normal(chi / (1.0 + chi));
    } else {
      const Vec3& sc = scenario.scatterers[rng.index(scenario.scatterers.size())];
      direction_angles(ap, sc, elevation[ul], azimuth[ul]);
      prv[l] = rng.complex_normal(1.0 / ((num_paths - 1) * (chi + 1.0)));
    }
    fields.col(l) = transverse_field(elevation[ul], azimuth[ul], rng);
  }
  return PathSet::from_angles(std::move(elevation), std::move(azimuth), std::move(prv), std::move(fields),
                              (ut - ap).norm());
}

PathTable sample_path_table(const Scenario& scenario, Rng& rng) {
  PathTable table(scenario.num_aps(), scenario.num_uts());
  for (int m = 0; m < scenario.num_aps(); ++m)
    for (int k = 0; k < scenario.num_uts(); ++k) table.at(k, m) = sample_paths(scenario, k, m, rng);
  return table;
}

PathTable sample_path_table(const Scenario& scenario, std::uint64_t stream) {
  Rng rng(derive_seed(derive_seed(scenario.config.seed, kPaths), stream));
  return sample_path_table(scenario, rng);
}

PathTable perturb_prv(const PathTable& table, double variance, Rng& rng) {
  PathTable out = table;
  if (variance <= 0.0) return out;
  for (int m = 0; m < table.num_aps(); ++m)
    for (int k = 0; k < table.num_uts(); ++k) {
      auto& prv = out.at(k, m).prv;
      for (Eigen::Index l = 0; l < prv.size(); ++l) prv[l] -= rng.complex_normal(variance);
    }
  return out;
}

}  // namespace sixdma
