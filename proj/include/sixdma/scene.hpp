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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sixdma/rng.hpp"
#include "sixdma/types.hpp"

namespace sixdma {

/// Unit wave vector of a plane wave arriving from elevation `elevation` and
/// azimuth `azimuth` (radians): [cos(el)cos(az), cos(el)sin(az), sin(el)].
Vec3 wave_vector(double elevation, double azimuth);

/// Disc-shaped hotspot on the ground plane (meters).
struct Hotspot {
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 10.0;
};

struct ScenarioConfig {
  int num_aps = 8;
  int num_uts = 6;
  int paths_per_link = 5;
  double wavelength = 0.125;        // meters
  double rician_factor = 10.0;      // linear
  double region_side = 2.0;         // multiples of the wavelength
  double noise_dbm = -80.0;
  double tx_power_dbm = 10.0;
  std::vector<double> weights;      // empty means all ones

  // Ground area [-half_side, half_side]^2 hosting UTs; APs sit on a ring.
  double area_half_side = 50.0;
  double ap_ring_radius = 35.0;
  double ap_height = 10.0;
  double ut_height = 1.5;
  std::array<Hotspot, 2> hotspots{Hotspot{-22.0, 18.0, 10.0}, Hotspot{20.0, -20.0, 10.0}};
  double hotspot_fraction = 0.8;

  // Scatterer pool drawn uniformly inside this cuboid (meters).
  Vec3 scatterer_min{-50.0, -50.0, 0.0};
  Vec3 scatterer_max{50.0, 50.0, 20.0};
  int num_scatterers = 40;

  std::uint64_t seed = 1;

  /// Normalized noise power sigma^2 / p (linear).
  double normalized_noise() const;
  /// UT weight omega_k (1 when no weights were configured).
  double weight(int k) const;
  RVector weight_vector() const;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

/// Axis-aligned antenna moving region in an AP's local frame (meters).
struct BoxRegion {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  bool contains(const Vec3& q) const {
    return (q.array() >= min.array()).all() && (q.array() <= max.array()).all();
  }
};

/// Multipath description of one (UT, AP) link. Entry 0 is the LoS path.
struct PathSet {
  std::vector<double> elevation;   // radians
  std::vector<double> azimuth;     // radians
  CVector prv;                     // complex path responses
  Eigen::Matrix3Xd directions;     // wave vectors, one column per path
  Eigen::Matrix3Xd fields;         // unit field vectors, orthogonal to directions
  double distance = 1.0;           // AP reference point to UT (meters)

  int size() const { return static_cast<int>(elevation.size()); }

  /// Builds a PathSet and derives the wave vectors from the angles.
  static PathSet from_angles(std::vector<double> elevation, std::vector<double> azimuth, CVector prv,
                             Eigen::Matrix3Xd fields, double distance);
};

/// All M x K link descriptions of one channel realization.
class PathTable {
 public:
  PathTable() = default;
  PathTable(int num_aps, int num_uts) : num_aps_(num_aps), num_uts_(num_uts), links_(num_aps * num_uts) {}

  int num_aps() const { return num_aps_; }
  int num_uts() const { return num_uts_; }

  const PathSet& at(int k, int m) const { return links_[static_cast<std::size_t>(m * num_uts_ + k)]; }
  PathSet& at(int k, int m) { return links_[static_cast<std::size_t>(m * num_uts_ + k)]; }

  /// Copy with UT columns reordered: result UT j is this table's UT order[j].
  PathTable permuted_uts(const std::vector<int>& order) const;

 private:
  int num_aps_ = 0;
  int num_uts_ = 0;
  std::vector<PathSet> links_;
};

struct Scenario {
  ScenarioConfig config;
  std::vector<Vec3> ap_positions;   // global reference point of each AP
  std::vector<Vec3> ut_positions;
  std::vector<Vec3> scatterers;
  std::vector<BoxRegion> regions;   // local frame, one per AP

  int num_aps() const { return static_cast<int>(ap_positions.size()); }
  int num_uts() const { return static_cast<int>(ut_positions.size()); }
  double wavelength() const { return config.wavelength; }
};

/// Deterministic deployment for cfg (same config and seed, same scenario).
Scenario generate_scenario(const ScenarioConfig& cfg);

/// True when (x, y) lies inside one of the configured hotspot discs.
bool in_hotspot(const ScenarioConfig& cfg, double x, double y);

/// Draws the multipath description of link (k, m).
PathSet sample_paths(const Scenario& scenario, int k, int m, Rng& rng);

/// Draws every link of one channel realization.
PathTable sample_path_table(const Scenario& scenario, Rng& rng);

/// Convenience: a realization seeded from the scenario seed and a stream id.
PathTable sample_path_table(const Scenario& scenario, std::uint64_t stream);

/// Copy of `table` with every PRV replaced by a - n, n ~ CN(0, variance).
PathTable perturb_prv(const PathTable& table, double variance, Rng& rng);

}  // namespace sixdma
