// SPDX-License-Identifier: Apache-2.0
//
// Exact two-mode Schroedinger evolution.
//
// Sector methods propagate every Manley-Rowe sector independently, either by
// diagonalising its tridiagonal block (sector_expm) or with an adaptive
// Runge-Kutta integrator (sector_ode). The adaptive-frame method instead keeps
// the state as D2(alpha) S1(eta) |phi> on a small product basis and moves the
// frame with the state.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pdc/config.hpp"
#include "pdc/fockspace.hpp"
#include "pdc/trajectory.hpp"

namespace pdc {

// Propagates one sector over a raw-time grid whose first entry equals
// state.time. Entry i of the result is the state at t_grid[i].
// `time_scale` converts raw to scaled time for the norm-drift budget.
std::vector<SectorState> propagate_sector(const SectorState& state, cplx K,
                                          const std::vector<double>& t_grid,
                                          const PropagatorSpec& spec, double time_scale = 1.0);

// Uniform scaled output grid [0, cfg.t_end_scaled()] with cfg.n_points entries.
std::vector<double> scaled_grid(const SimConfig& cfg);

Trajectory evolve_exact(const SimConfig& cfg);

Trajectory evolve_adaptive_frame(const SimConfig& cfg, const PropagatorSpec& spec);

struct GaugeReport {
  double phase = 0.0;
  double max_deviation = 0.0;  // relative, over n1, n2, norm2 and efficiency
  std::string worst_field;
  double worst_tau = 0.0;
  bool passed = true;
};

// Re-runs evolve_exact with the pump rotated by e^{i phase} and K by
// e^{-i phase}; phase-insensitive observables must agree within `tol`.
GaugeReport gauge_check(const SimConfig& cfg, double phase, double tol = 1e-8);

}  // namespace pdc
