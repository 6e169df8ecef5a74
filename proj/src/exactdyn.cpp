// SPDX-License-Identifier: Apache-2.0
#include "pdc/exactdyn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <sstream>
#include <thread>

#include "pdc/errors.hpp"
#include "pdc/meanfield.hpp"
#include "moments.hpp"
#include "sector_propagator.hpp"

namespace pdc {

namespace {

[[noreturn]] void rethrow_with_sector(const Error& e, int N) {
  const std::string prefix = "sector " + std::to_string(N) + ":";
  const std::string what = e.what();
  throw_error(e.code(), what.rfind(prefix, 0) == 0 ? what : prefix + " " + what);
}

// History of a sector evaluated as exp(-i H (t - t0)) psi0 at every grid time.
std::vector<CVector> spectral_history(int N, cplx K, const CVector& psi0, const std::vector<double>& t_grid) {
  detail::SectorExpmPropagator prop(N, K);
  std::vector<CVector> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    CVector psi = psi0;
    prop.advance(psi, t_grid.front(), t);
    out.push_back(std::move(psi));
  }
  return out;
}

std::vector<CVector> stepped_history(int N, cplx K, const CVector& psi0, const std::vector<double>& t_grid,
                                     const PropagatorSpec& spec, double time_scale) {
  auto prop = detail::make_sector_propagator(N, K, spec, time_scale);
  std::vector<CVector> out;
  out.reserve(t_grid.size());
  CVector psi = psi0;
  out.push_back(psi);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    prop->advance(psi, t_grid[i - 1], t_grid[i]);
    out.push_back(psi);
  }
  return out;
}

std::vector<CVector> sector_history(int N, cplx K, const CVector& psi0, const std::vector<double>& t_grid,
                                    const PropagatorSpec& spec, double time_scale) {
  if (t_grid.empty()) throw ArgumentError("propagate_sector: empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] >= t_grid[i - 1])) throw ArgumentError("propagate_sector: time grid must be non-decreasing");
  if (psi0.size() != sector_dimension(N)) throw ArgumentError("propagate_sector: amplitude size does not match sector");
  if (spec.method == PropagatorMethod::sector_expm) return spectral_history(N, K, psi0, t_grid);
  return stepped_history(N, K, psi0, t_grid, spec, time_scale);
}

}  // namespace

std::vector<SectorState> propagate_sector(const SectorState& state, cplx K, const std::vector<double>& t_grid,
                                          const PropagatorSpec& spec, double time_scale) {
  if (t_grid.empty() || t_grid.front() != state.time)
    throw ArgumentError("propagate_sector: grid must start at the state time");
  const int N = state.sector.N;
  std::vector<CVector> hist;
  try {
    hist = sector_history(N, K, state.amplitudes, t_grid, spec, time_scale);
  } catch (const Error& e) {
    rethrow_with_sector(e, N);
  }
  std::vector<SectorState> out(hist.size());
  for (std::size_t i = 0; i < hist.size(); ++i) {
    out[i].sector = state.sector;
    out[i].time = t_grid[i];
    out[i].amplitudes = std::move(hist[i]);
  }
  return out;
}

std::vector<double> scaled_grid(const SimConfig& cfg) {
  if (cfg.n_points < 2) throw ConfigError("n_points: must be >= 2");
  const double t_end = cfg.t_end_scaled();
  std::vector<double> tau(cfg.n_points);
  for (int i = 0; i < cfg.n_points; ++i) tau[i] = t_end * i / (cfg.n_points - 1);
  tau.back() = t_end;
  return tau;
}

Trajectory evolve_exact(const SimConfig& cfg) {
  validate(cfg);
  const PropagatorSpec& spec = cfg.propagator;
  if (spec.method == PropagatorMethod::adaptive_frame) return evolve_adaptive_frame(cfg, spec);

  Trajectory traj;
  traj.method = std::string("exact/") + std::string(to_string(spec.method));
  traj.config = cfg;
  traj.time_scale = cfg.time_scale();
  traj.tau = scaled_grid(cfg);
  std::vector<double> t_raw(traj.tau.size());
  for (std::size_t i = 0; i < t_raw.size(); ++i) t_raw[i] = traj.tau[i] / traj.time_scale;

  const TwoModeState init = initial_state(cfg.pump_amplitude(), cfg.seed_alpha1, cfg.truncation);
  const cplx K = cfg.coupling();
  const int n_sec = static_cast<int>(init.sectors.size());
  const std::size_t T = t_raw.size();
  const int n_threads = std::max(1, cfg.threads);

  std::vector<detail::SectorMoments> acc(T);
  // Last few histories, enough for the N-1, N-2 and N-4 couplings.
  std::deque<std::pair<int, std::vector<CVector>>> window;
  auto lookup = [&](int N) -> const std::vector<CVector>* {
    for (const auto& w : window)
      if (w.first == N) return &w.second;
    return nullptr;
  };

  for (int base = 0; base < n_sec; base += n_threads) {
    const int count = std::min(n_threads, n_sec - base);
    std::vector<std::vector<CVector>> batch(count);
    std::vector<std::exception_ptr> errs(count);
    auto work = [&](int j) {
      const int N = base + j;
      const CVector& psi0 = init.sectors[N].amplitudes;
      if (psi0.squaredNorm() == 0.0) return;  // never populated
      try {
        batch[j] = sector_history(N, K, psi0, t_raw, spec, traj.time_scale);
      } catch (const Error& e) {
        try {
          rethrow_with_sector(e, N);
        } catch (...) {
          errs[j] = std::current_exception();
        }
      } catch (...) {
        errs[j] = std::current_exception();
      }
    };
    if (count == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int j = 0; j < count; ++j) pool.emplace_back(work, j);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);

    // Deterministic reduction in increasing N.
    for (int j = 0; j < count; ++j) {
      const int N = base + j;
      if (batch[j].empty()) continue;
      const auto* h1 = lookup(N - 1);
      const auto* h2 = lookup(N - 2);
      const auto* h4 = lookup(N - 4);
      const int d = sector_dimension(N);
      for (std::size_t i = 0; i < T; ++i)
        acc[i].add(N, batch[j][i].data(), d, h1 ? (*h1)[i].data() : nullptr, h2 ? (*h2)[i].data() : nullptr,
                   h4 ? (*h4)[i].data() : nullptr);
      window.emplace_back(N, std::move(batch[j]));
      while (!window.empty() && window.front().first < N - 4) window.pop_front();
    }
  }

  traj.points.reserve(T);
  for (std::size_t i = 0; i < T; ++i) {
    try {
      traj.points.push_back(acc[i].finish(cfg.truncation.norm_tol));
    } catch (const IntegrityError& e) {
      std::ostringstream msg;
      msg << e.what() << " at scaled time " << traj.tau[i];
      throw IntegrityError(msg.str());
    }
  }
  const double mr0 = traj.points.front().manley_rowe;
  double drift = 0.0;
  for (const auto& p : traj.points) drift = std::max(drift, std::abs(p.manley_rowe - mr0));
  traj.manley_rowe_drift = mr0 > 0.0 ? drift / mr0 : drift;
  return traj;
}

GaugeReport gauge_check(const SimConfig& cfg, double phase, double tol) {
  SimConfig ref_cfg = cfg;
  ref_cfg.propagator.method =
      cfg.propagator.method == PropagatorMethod::adaptive_frame ? PropagatorMethod::sector_expm : cfg.propagator.method;
  SimConfig rot_cfg = ref_cfg;
  rot_cfg.gauge_phase = cfg.gauge_phase + phase;

  const Trajectory a = evolve_exact(ref_cfg);
  const Trajectory b = evolve_exact(rot_cfg);

  GaugeReport rep;
  rep.phase = phase;
  auto compare = [&](const char* name, double x, double y, double ref, double tau) {
    const double dev = std::abs(x - y) / std::max(std::abs(ref), 1e-300);
    if (dev > rep.max_deviation || !std::isfinite(dev)) {
      rep.max_deviation = dev;
      rep.worst_field = name;
      rep.worst_tau = tau;
    }
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& p = a.points[i];
    const auto& q = b.points[i];
    // Relative above one photon, absolute below.
    compare("n1_mean", p.n1, q.n1, std::max(1.0, p.n1), a.tau[i]);
    compare("n2_mean", p.n2, q.n2, std::max(1.0, p.n2), a.tau[i]);
    compare("norm2", p.norm2, q.norm2, 1.0, a.tau[i]);
    if (ref_cfg.n2_0 > 0.0)
      compare("efficiency", p.n1 / (2.0 * ref_cfg.n2_0), q.n1 / (2.0 * ref_cfg.n2_0), 1.0, a.tau[i]);
  }
  rep.passed = rep.max_deviation <= tol;
  return rep;
}

}  // namespace pdc
