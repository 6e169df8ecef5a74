// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "pdc/config.hpp"
#include "pdc/observables.hpp"

namespace pdc {

struct Trajectory {
  std::string method;            // e.g. "exact/sector_expm", "meanfield"
  SimConfig config;
  double time_scale = 1.0;       // tau = time_scale * t
  std::vector<double> tau;       // scaled output times, strictly increasing
  std::vector<Observables> points;

  // Mean-field only (empty otherwise).
  std::vector<double> eta;
  std::vector<double> beta;

  // Adaptive frame only: frame parameters after each output step and the
  // population in the top 10% of each frame basis.
  std::vector<cplx> frame_alpha;
  std::vector<double> frame_eta;  // squeeze magnitude |eta|
  std::vector<double> leak_pump;
  std::vector<double> leak_sub;

  // Sector methods: max |<N>(t) - <N>(0)| / <N>(0).
  double manley_rowe_drift = 0.0;

  std::size_t size() const { return tau.size(); }
  double raw_time(std::size_t i) const { return tau[i] / time_scale; }
};

}  // namespace pdc
