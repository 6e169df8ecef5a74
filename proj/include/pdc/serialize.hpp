// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pdc/analysis.hpp"
#include "pdc/driver.hpp"
#include "pdc/trajectory.hpp"

namespace pdc {

const char* version();

// 17 significant digits; round-trips through strtod.
std::string format_number(double x);

// Fixed column set; the first header is t_raw instead of t_scaled when
// the trajectory was configured with raw_time.
const std::vector<std::string>& csv_columns();
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
std::string trajectory_csv(const Trajectory& traj);

std::string features_json(const TrajectoryFeatures& f, const Trajectory& traj, int indent = 2);

std::string compare_csv(const CompareResult& res);
std::string compare_report_json(const CompareResult& res, int indent = 2);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace pdc
