// SPDX-License-Identifier: Apache-2.0
#include "pdc/analysis.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "pdc/driver.hpp"
#include "pdc/errors.hpp"

namespace pdc {

double field_value(const Observables& o, Field f) {
  switch (f) {
    case Field::n1: return o.n1;
    case Field::n2: return o.n2;
    case Field::re_a2: return o.a2.real();
    case Field::abs_a2: return std::abs(o.a2);
    case Field::abs_a2_sq: return std::norm(o.a2);
    case Field::re_a1sq: return o.a1sq.real();
    case Field::var_x1: return o.var_x1;
    case Field::var_p1: return o.var_p1;
    case Field::var_x2: return o.var_x2;
    case Field::var_p2: return o.var_p2;
    case Field::norm2: return o.norm2;
    case Field::manley_rowe: return o.manley_rowe;
  }
  return 0.0;
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::n1: return "n1_mean";
    case Field::n2: return "n2_mean";
    case Field::re_a2: return "re_a2";
    case Field::abs_a2: return "abs_a2";
    case Field::abs_a2_sq: return "abs_a2_sq";
    case Field::re_a1sq: return "re_a1sq";
    case Field::var_x1: return "var_x1";
    case Field::var_p1: return "var_p1";
    case Field::var_x2: return "var_x2";
    case Field::var_p2: return "var_p2";
    case Field::norm2: return "norm2";
    case Field::manley_rowe: return "manley_rowe";
  }
  return "?";
}

std::vector<double> conversion_efficiency(const Trajectory& traj, double n2_0) {
  if (!(n2_0 > 0.0)) throw ArgumentError("conversion_efficiency: n2_0 must be > 0");
  if (traj.config.n2_0 != n2_0) {
    std::ostringstream msg;
    msg << "conversion_efficiency: n2_0 = " << n2_0 << " but trajectory was run with " << traj.config.n2_0;
    throw ArgumentError(msg.str());
  }
  if (traj.points.size() != traj.tau.size()) throw ArgumentError("conversion_efficiency: ragged trajectory");
  std::vector<double> eff(traj.size());
  for (std::size_t i = 0; i < eff.size(); ++i) {
    double e = traj.points[i].n1 / (2.0 * n2_0);
    if (e > 1.0 + 1e-6) {
      std::ostringstream msg;
      msg << "conversion_efficiency: " << e << " exceeds 1 at scaled time " << traj.tau[i];
      throw IntegrityError(msg.str());
    }
    eff[i] = std::min(e, 1.0);
  }
  return eff;
}

Extremum find_extremum(const std::vector<double>& t, const std::vector<double>& y, ExtremumKind kind) {
  if (t.size() != y.size()) throw ArgumentError("find_extremum: size mismatch");
  if (t.size() < 5) throw ArgumentError("find_extremum: need at least 5 points");
  const double sign = kind == ExtremumKind::max ? 1.0 : -1.0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (sign * y[i] > sign * y[best]) best = i;
  Extremum ex;
  ex.index = best;
  ex.time = t[best];
  ex.value = y[best];
  if (best == 0 || best + 1 == y.size()) {
    ex.boundary = true;
    return ex;
  }
  // Parabola through three (possibly unevenly spaced) points.
  const double x0 = t[best - 1], x1 = t[best], x2 = t[best + 1];
  const double y0 = y[best - 1], y1 = y[best], y2 = y[best + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double a = (d12 - d01) / (x2 - x0);
  if (a == 0.0 || !std::isfinite(a)) return ex;
  const double b = d01 - a * (x0 + x1);
  const double xs = -b / (2.0 * a);
  if (xs < x0 || xs > x2) return ex;
  ex.time = xs;
  ex.value = y1 + (xs - x1) * (d01 + a * (xs - x0));
  if (sign * ex.value < sign * y1) ex.value = y1;
  return ex;
}

Extremum find_extremum_time(const Trajectory& traj, Field field, ExtremumKind kind) {
  std::vector<double> y(traj.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = field_value(traj.points[i], field);
  return find_extremum(traj.tau, y, kind);
}

TrajectoryFeatures extract_features(const Trajectory& traj) {
  TrajectoryFeatures f;
  f.method = traj.method;
  f.has_variances = traj.method != "classical";
  const double n2_0 = traj.config.n2_0;
  auto note = [&](const char* what, const Extremum& e) {
    if (e.boundary) f.warnings.push_back(std::string(what) + ": extremum on grid boundary");
  };

  if (n2_0 > 0.0) {
    const auto eff = conversion_efficiency(traj, n2_0);
    const Extremum e = find_extremum(traj.tau, eff, ExtremumKind::max);
    note("max_conversion_efficiency", e);
    f.max_conversion_efficiency = std::clamp(e.value, 0.0, 1.0);
    f.t_of_max_conversion = e.time;
    f.var_x2_at_max_conversion = traj.points[e.index].var_x2;
  } else {
    f.var_x2_at_max_conversion = traj.points.front().var_x2;
  }

  const Extremum vp = find_extremum_time(traj, Field::var_p1, ExtremumKind::min);
  note("min_var_p1", vp);
  f.min_var_p1 = vp.value;
  f.t_of_min_var_p1 = vp.time;

  const Extremum vx = find_extremum_time(traj, Field::var_x2, ExtremumKind::max);
  note("max_var_x2", vx);
  f.max_var_x2 = vx.value;
  f.t_of_max_var_x2 = vx.time;

  // |<a2>|^2 is smooth through a zero of <a2>, |<a2>| is not.
  const Extremum pa = find_extremum_time(traj, Field::abs_a2_sq, ExtremumKind::min);
  note("pump_amplitude_min", pa);
  f.pump_amplitude_min = std::sqrt(std::max(pa.value, 0.0));
  f.t_of_pump_amplitude_min = pa.time;
  return f;
}

std::vector<SweepRow> efficiency_sweep(const std::vector<double>& n2_list, const SimConfig& tmpl) {
  if (n2_list.empty()) throw ArgumentError("efficiency_sweep: empty n2 list");
  std::vector<SweepRow> rows;
  for (double n2 : n2_list) {
    SweepRow row;
    row.n2_0 = n2;
    const auto start = std::chrono::steady_clock::now();
    try {
      SimConfig cfg = tmpl;
      cfg.n2_0 = n2;
      const Trajectory traj = simulate(cfg);
      const TrajectoryFeatures f = extract_features(traj);
      row.max_efficiency = f.max_conversion_efficiency;
      row.t_of_max = f.t_of_max_conversion;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pdc
