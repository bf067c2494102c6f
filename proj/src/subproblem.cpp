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

#include "sixdma/subproblem.hpp"

namespace sixdma {

CMatrix ap_channel(const AntennaPose& pose, const ApSample& sample, double wavelength) {
  const int ports = pose.ports();
  CMatrix h(static_cast<Eigen::Index>(sample.links.size()), ports);
  for (std::size_t k = 0; k < sample.links.size(); ++k)
    for (int p = 0; p < ports; ++p)
      h(static_cast<Eigen::Index>(k), p) = channel_coeff(pose, *sample.links[k], wavelength, p);
  return h;
}

double subproblem_objective(const AntennaPose& pose, const ApProblem& problem) {
  double total = 0.0;
  for (const auto& s : problem.samples) total += s.weight * ap_objective(ap_channel(pose, s, problem.wavelength), s.coeffs);
  return total;
}

}  // namespace sixdma
