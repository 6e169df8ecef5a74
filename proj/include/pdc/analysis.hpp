// SPDX-License-Identifier: Apache-2.0
//
// Feature extraction from trajectories.
#pragma once

#include <string>
#include <vector>

#include "pdc/config.hpp"
#include "pdc/trajectory.hpp"

namespace pdc {

enum class Field { n1, n2, re_a2, abs_a2, abs_a2_sq, re_a1sq, var_x1, var_p1, var_x2, var_p2, norm2, manley_rowe };
enum class ExtremumKind { min, max };

double field_value(const Observables& o, Field f);
std::string_view to_string(Field f);

struct Extremum {
  double time = 0.0;   // scaled
  double value = 0.0;
  std::size_t index = 0;
  bool boundary = false;  // discrete extremum on the first or last grid point
};

// Pointwise <n1> / (2 n2_0). n2_0 must match the trajectory's config.
// Values above 1 + 1e-6 throw IntegrityError; smaller overshoots are clipped.
std::vector<double> conversion_efficiency(const Trajectory& traj, double n2_0);

// Discrete extremum refined by a parabola through it and its neighbours.
Extremum find_extremum_time(const Trajectory& traj, Field field, ExtremumKind kind);
Extremum find_extremum(const std::vector<double>& t, const std::vector<double>& y, ExtremumKind kind);

struct TrajectoryFeatures {
  std::string method;
  double max_conversion_efficiency = 0.0;
  double t_of_max_conversion = 0.0;
  double min_var_p1 = 0.25;
  double t_of_min_var_p1 = 0.0;
  double max_var_x2 = 0.25;
  double t_of_max_var_x2 = 0.0;
  double pump_amplitude_min = 0.0;   // min |<a2>|
  double t_of_pump_amplitude_min = 0.0;
  double var_x2_at_max_conversion = 0.25;  // nearest grid point
  bool has_variances = true;
  std::vector<std::string> warnings;
};

TrajectoryFeatures extract_features(const Trajectory& traj);

struct SweepRow {
  double n2_0 = 0.0;
  bool ok = false;
  double max_efficiency = 0.0;
  double t_of_max = 0.0;
  double runtime_s = 0.0;
  std::string error;
};

// Runs `tmpl` once per n2_0; a failing row records its error and the sweep continues.
std::vector<SweepRow> efficiency_sweep(const std::vector<double>& n2_list, const SimConfig& tmpl);

}  // namespace pdc
