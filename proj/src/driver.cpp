// SPDX-License-Identifier: Apache-2.0
#include "pdc/driver.hpp"

#include <cmath>

#include "pdc/analysis.hpp"
#include "pdc/baselines.hpp"
#include "pdc/errors.hpp"
#include "pdc/exactdyn.hpp"
#include "pdc/meanfield.hpp"

namespace pdc {

namespace {

Trajectory skeleton(const SimConfig& cfg, std::string method) {
  Trajectory traj;
  traj.method = std::move(method);
  traj.config = cfg;
  traj.time_scale = cfg.time_scale();
  traj.tau = scaled_grid(cfg);
  return traj;
}

std::vector<double> raw_times(const Trajectory& traj) {
  std::vector<double> t(traj.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.raw_time(i);
  return t;
}

Trajectory run_classical(const SimConfig& cfg) {
  Trajectory traj = skeleton(cfg, "classical");
  const auto states = classical_evolve(cfg.seed_alpha1, cfg.pump_amplitude(), cfg.coupling(), raw_times(traj));
  for (const auto& s : states) traj.points.push_back(classical_observables(s));
  return traj;
}

Trajectory run_linearized(const SimConfig& cfg) {
  Trajectory traj = skeleton(cfg, "linearized");
  const double a2 = std::sqrt(cfg.n2_0);
  for (std::size_t i = 0; i < traj.size(); ++i)
    traj.points.push_back(linearized_observables(traj.raw_time(i), a2, cfg.K));
  const cplx rot = std::polar(1.0, cfg.gauge_phase);
  for (auto& p : traj.points) p.a2 *= rot;
  return traj;
}

Trajectory run_meanfield(const SimConfig& cfg) {
  Trajectory traj = skeleton(cfg, "meanfield");
  const MeanFieldTrajectory mf = integrate_meanfield(cfg.n2_0, cfg.K, raw_times(traj), cfg.meanfield_tol);
  traj.points = mf.points;
  traj.eta = mf.eta;
  traj.beta = mf.beta;
  // The pump phase follows the gauge rotation; <a1^2> carries arg(K alpha2), which is invariant.
  const cplx rot = std::polar(1.0, cfg.gauge_phase);
  for (auto& p : traj.points) p.a2 *= rot;
  return traj;
}

double relative_gap(double x, double y) {
  const double m = std::max(std::abs(x), std::abs(y));
  return m > 1e-12 ? std::abs(x - y) / m : 0.0;
}

}  // namespace

Trajectory simulate(const SimConfig& cfg) {
  validate(cfg);
  switch (cfg.method) {
    case Method::classical: return run_classical(cfg);
    case Method::linearized: return run_linearized(cfg);
    case Method::meanfield: return run_meanfield(cfg);
    case Method::exact: return evolve_exact(cfg);
    case Method::adaptive: return evolve_adaptive_frame(cfg, cfg.propagator);
  }
  throw ArgumentError("simulate: unknown method");
}

CompareResult compare_methods(const SimConfig& cfg, const std::vector<std::string>& methods) {
  if (methods.empty()) throw ArgumentError("compare: empty method list");
  CompareResult res;
  for (const auto& name : methods) {
    try {
      SimConfig c = cfg;
      c.method = parse_method(name);
      res.runs.push_back(simulate(c));
      res.methods.push_back(name);
    } catch (const std::exception& e) {
      res.failures.emplace_back(name, e.what());
    }
  }

  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < res.runs.size(); ++j) {
      const Trajectory& a = res.runs[i];
      const Trajectory& b = res.runs[j];
      PairDivergence d;
      d.a = res.methods[i];
      d.b = res.methods[j];
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double g = relative_gap(a.points[k].n1, b.points[k].n1);
        if (g > d.max_rel_n1) {
          d.max_rel_n1 = g;
          d.tau_of_max = a.tau[k];
        }
        if (!d.tau_first_5pct && g > 0.05) d.tau_first_5pct = a.tau[k];
      }
      res.pairs.push_back(d);
    }
  }

  const Trajectory* mf = nullptr;
  const Trajectory* ex = nullptr;
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    if (res.methods[i] == "meanfield" && !mf) mf = &res.runs[i];
    if ((res.methods[i] == "exact" || res.methods[i] == "adaptive") && !ex) ex = &res.runs[i];
  }
  if (mf && ex) {
    for (std::size_t k = 0; k < mf->size(); ++k) {
      if (relative_gap(std::abs(mf->points[k].a2), std::abs(ex->points[k].a2)) > 0.05) {
        res.tau_pump_split = mf->tau[k];
        break;
      }
    }
  }
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    if (res.runs[i].size() < 5) continue;
    const Extremum e = find_extremum_time(res.runs[i], Field::abs_a2_sq, ExtremumKind::min);
    res.pump_min_times.emplace_back(res.methods[i], e.time);
  }
  return res;
}

}  // namespace pdc
