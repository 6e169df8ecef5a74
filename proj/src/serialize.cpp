// SPDX-License-Identifier: Apache-2.0
#include "pdc/serialize.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pdc {

namespace {

using ojson = nlohmann::ordered_json;

// Number of data columns after the time column.
constexpr int kDataColumns = 14;

void row_values(const Trajectory& traj, std::size_t i, std::vector<std::string>& cells) {
  const Observables& o = traj.points[i];
  const bool variances = traj.method != "classical";
  auto num = [](double x) { return format_number(x); };
  cells.clear();
  cells.push_back(num(o.n1));
  cells.push_back(num(o.n2));
  cells.push_back(num(o.a2.real()));
  cells.push_back(num(o.a2.imag()));
  cells.push_back(num(o.a1sq.real()));
  cells.push_back(num(o.a1sq.imag()));
  for (double v : {o.var_x1, o.var_p1, o.var_x2, o.var_p2}) cells.push_back(variances ? num(v) : "");
  cells.push_back(num(o.norm2));
  cells.push_back(num(o.manley_rowe));
  cells.push_back(i < traj.eta.size() ? num(traj.eta[i]) : "");
  cells.push_back(i < traj.beta.size() ? num(traj.beta[i]) : "");
}

double output_time(const Trajectory& traj, std::size_t i) {
  return traj.config.raw_time ? traj.raw_time(i) : traj.tau[i];
}

ojson config_echo(const SimConfig& cfg) { return ojson::parse(config_to_json(cfg, -1)); }

}  // namespace

const char* version() { return PDC_VERSION_STRING; }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"t_scaled", "n1_mean", "n2_mean", "re_a2",    "im_a2",
                                                "re_a1sq",  "im_a1sq", "var_x1",  "var_p1",   "var_x2",
                                                "var_p2",   "norm2",   "manley_rowe", "eta", "beta"};
  return cols;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const auto& cols = csv_columns();
  out << (traj.config.raw_time ? "t_raw" : cols[0]);
  for (std::size_t c = 1; c < cols.size(); ++c) out << ',' << cols[c];
  out << '\n';
  std::vector<std::string> cells;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_number(output_time(traj, i));
    row_values(traj, i, cells);
    for (const auto& c : cells) out << ',' << c;
    out << '\n';
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream ss;
  write_trajectory_csv(ss, traj);
  return ss.str();
}

std::string features_json(const TrajectoryFeatures& f, const Trajectory& traj, int indent) {
  ojson j;
  j["tool"] = "pdcsim";
  j["version"] = version();
  j["method"] = f.method;
  j["max_conversion_efficiency"] = f.max_conversion_efficiency;
  j["t_of_max_conversion"] = f.t_of_max_conversion;
  if (f.has_variances) {
    j["min_var_p1"] = f.min_var_p1;
    j["t_of_min_var_p1"] = f.t_of_min_var_p1;
    j["max_var_x2"] = f.max_var_x2;
    j["t_of_max_var_x2"] = f.t_of_max_var_x2;
    j["var_x2_at_max_conversion"] = f.var_x2_at_max_conversion;
  } else {
    j["min_var_p1"] = nullptr;
    j["t_of_min_var_p1"] = nullptr;
    j["max_var_x2"] = nullptr;
    j["t_of_max_var_x2"] = nullptr;
    j["var_x2_at_max_conversion"] = nullptr;
  }
  j["pump_amplitude_min"] = f.pump_amplitude_min;
  j["t_of_pump_amplitude_min"] = f.t_of_pump_amplitude_min;
  j["manley_rowe_drift"] = traj.manley_rowe_drift;
  j["time_scale"] = traj.time_scale;
  j["warnings"] = f.warnings;
  j["config"] = config_echo(traj.config);
  return j.dump(indent);
}

std::string compare_csv(const CompareResult& res) {
  std::ostringstream out;
  if (res.runs.empty()) return "t_scaled\n";
  const auto& cols = csv_columns();
  const bool raw = res.runs.front().config.raw_time;
  out << (raw ? "t_raw" : cols[0]);
  for (const auto& m : res.methods)
    for (std::size_t c = 1; c < cols.size(); ++c) out << ',' << m << ':' << cols[c];
  out << '\n';
  std::vector<std::string> cells;
  const Trajectory& first = res.runs.front();
  for (std::size_t i = 0; i < first.size(); ++i) {
    out << format_number(output_time(first, i));
    for (const auto& traj : res.runs) {
      row_values(traj, i, cells);
      static_assert(kDataColumns == 14);
      for (const auto& c : cells) out << ',' << c;
    }
    out << '\n';
  }
  return out.str();
}

std::string compare_report_json(const CompareResult& res, int indent) {
  ojson j;
  j["tool"] = "pdcsim";
  j["version"] = version();
  j["methods"] = res.methods;
  ojson fails = ojson::array();
  for (const auto& [m, why] : res.failures) fails.push_back({{"method", m}, {"error", why}});
  j["failures"] = fails;
  ojson pairs = ojson::array();
  for (const auto& p : res.pairs) {
    ojson e;
    e["a"] = p.a;
    e["b"] = p.b;
    e["max_rel_n1_divergence"] = p.max_rel_n1;
    e["t_of_max_divergence"] = p.tau_of_max;
    e["t_first_divergence_5pct"] = p.tau_first_5pct ? ojson(*p.tau_first_5pct) : ojson(nullptr);
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  j["t_pump_amplitude_split_5pct"] = res.tau_pump_split ? ojson(*res.tau_pump_split) : ojson(nullptr);
  ojson pm = ojson::object();
  for (const auto& [m, t] : res.pump_min_times) pm[m] = t;
  j["t_of_pump_amplitude_min"] = pm;
  if (!res.runs.empty()) j["config"] = config_echo(res.runs.front().config);
  return j.dump(indent);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "n2_0,max_efficiency,t_of_max,runtime_s,error\n";
  for (const auto& r : rows) {
    out << format_number(r.n2_0) << ',';
    if (r.ok) out << format_number(r.max_efficiency) << ',' << format_number(r.t_of_max);
    else out << ',';
    std::string err = r.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    out << ',' << format_number(r.runtime_s) << ',' << err << '\n';
  }
  return out.str();
}

}  // namespace pdc
