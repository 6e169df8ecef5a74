// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdc/config.hpp"
#include "pdc/trajectory.hpp"

namespace pdc {

// Dispatches on cfg.method.
Trajectory simulate(const SimConfig& cfg);

struct PairDivergence {
  std::string a, b;
  double max_rel_n1 = 0.0;       // max |n1_a - n1_b| / max(n1_a, n1_b)
  double tau_of_max = 0.0;
  std::optional<double> tau_first_5pct;  // first tau with relative n1 divergence > 5%
};

struct CompareResult {
  std::vector<std::string> methods;  // survivors, in request order
  std::vector<Trajectory> runs;
  std::vector<std::pair<std::string, std::string>> failures;  // method, message
  std::vector<PairDivergence> pairs;
  // First tau at which mean-field and exact |<a2>| differ by 5% of the larger.
  std::optional<double> tau_pump_split;
  std::vector<std::pair<std::string, double>> pump_min_times;
};

// Methods are given as method names; "exact" honours cfg.propagator.
CompareResult compare_methods(const SimConfig& cfg, const std::vector<std::string>& methods);

}  // namespace pdc
