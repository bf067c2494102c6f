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

#include <vector>

#include "sixdma/channel.hpp"
#include "sixdma/receiver.hpp"
#include "sixdma/scene.hpp"

namespace sixdma {

/// The single-AP block subproblem shared by the position and orientation
/// optimizers: for AP m, one entry per channel realization (one entry for
/// instantaneous CSI, |L| entries for the offline design) with the K link
/// descriptions, the FP coefficients extracted at the current global state and
/// an averaging weight.
struct ApSample {
  std::vector<const PathSet*> links;   // indexed by UT
  ApCoefficients coeffs;
  double weight = 1.0;
};

struct ApProblem {
  double wavelength = 0.125;
  std::vector<ApSample> samples;
};

/// Channel entries h (K x ports) of one sample for the given pose.
CMatrix ap_channel(const AntennaPose& pose, const ApSample& sample, double wavelength);

/// Weighted subproblem objective sum_s w_s F_s(pose) (natural units). As a
/// function of the position this is F(q); of the orientation, Q(A).
double subproblem_objective(const AntennaPose& pose, const ApProblem& problem);

}  // namespace sixdma
