// SPDX-License-Identifier: Apache-2.0
#include "pdc/selftest.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>
#include <sstream>

#include "pdc/analysis.hpp"
#include "pdc/baselines.hpp"
#include "pdc/exactdyn.hpp"
#include "pdc/frame_shift.hpp"
#include "pdc/meanfield.hpp"

namespace pdc {

namespace {

SelftestCheck check(const std::string& name, const std::function<std::string(bool&)>& body) {
  SelftestCheck c;
  c.name = name;
  try {
    c.detail = body(c.passed);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  return c;
}

std::string fmt(const char* label, double x) {
  std::ostringstream ss;
  ss << label << " = " << x;
  return ss.str();
}

SimConfig small_config(double n2) {
  SimConfig cfg;
  cfg.n2_0 = n2;
  cfg.n_points = 41;
  cfg.t_max_scaled = 4.0;
  return cfg;
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  std::vector<SelftestCheck> out;

  out.push_back(check("two_photon_sector_rabi", [](bool& ok) {
    SectorState s;
    s.sector.N = 2;
    s.amplitudes = CVector::Zero(2);
    s.amplitudes(1) = 1.0;
    const std::vector<double> ts = {0.0, 0.4, 1.3, 2.9};
    PropagatorSpec spec;
    const auto h = propagate_sector(s, 1.0, ts, spec);
    double err = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double expect = std::pow(std::sin(ts[i] / std::sqrt(2.0)), 2);
      err = std::max(err, std::abs(std::norm(h[i].amplitudes(0)) - expect));
    }
    ok = err < 1e-12;
    return fmt("max error", err);
  }));

  out.push_back(check("ode_matches_dense_exponential", [](bool& ok) {
    double err = 0.0;
    for (int N = 0; N <= 8; ++N) {
      const int d = sector_dimension(N);
      SectorState s;
      s.sector.N = N;
      s.amplitudes = CVector(d);
      for (int k = 0; k < d; ++k) s.amplitudes(k) = cplx(std::cos(1.0 + k), std::sin(0.3 * k + N));
      s.amplitudes.normalize();
      PropagatorSpec spec;
      spec.method = PropagatorMethod::sector_ode;
      spec.step_tol = 1e-12;
      const auto h = propagate_sector(s, 1.0, {0.0, 3.0}, spec);
      const CMatrix U = (cplx(0.0, -3.0) * sector_hamiltonian_dense(N, 1.0)).exp();
      err = std::max(err, (h[1].amplitudes - U * s.amplitudes).cwiseAbs().maxCoeff());
    }
    ok = err < 1e-8;
    return fmt("max amplitude error", err);
  }));

  out.push_back(check("manley_rowe_and_norm", [](bool& ok) {
    const Trajectory t = evolve_exact(small_config(20.0));
    double norm_dev = 0.0, a1 = 0.0;
    for (const auto& p : t.points) {
      norm_dev = std::max(norm_dev, std::abs(p.norm2 - 1.0));
      a1 = std::max(a1, std::abs(p.a1));
    }
    ok = t.manley_rowe_drift <= 1e-10 && norm_dev <= 1e-6 && a1 == 0.0;
    std::ostringstream ss;
    ss << "drift = " << t.manley_rowe_drift << ", norm deviation = " << norm_dev << ", max |<a1>| = " << a1;
    return ss.str();
  }));

  out.push_back(check("gauge_invariance", [](bool& ok) {
    const GaugeReport r = gauge_check(small_config(20.0), M_PI / 2);
    ok = r.passed;
    return fmt("max deviation", r.max_deviation);
  }));

  out.push_back(check("pendulum_energy_integral", [](bool& ok) {
    const double n2 = 20.0;
    const double period = 2.0 * t_conv(n2) / std::sqrt(n2);
    std::vector<double> ts;
    for (int i = 0; i <= 200; ++i) ts.push_back(2.0 * period * i / 200.0);
    const auto mf = integrate_meanfield(n2, 1.0, ts);
    const double rel = mf.max_energy_drift / (2.0 * n2);
    ok = rel <= 1e-6;
    return fmt("relative drift", rel);
  }));

  out.push_back(check("conversion_time_relation", [](bool& ok) {
    const double d = std::abs(t_conv(200.0) - 2.0 * t_squeeze(200.0));
    ok = d <= 4.0 * std::numeric_limits<double>::epsilon() * t_conv(200.0);
    return fmt("|t_conv - 2 t_squeeze|", d);
  }));

  out.push_back(check("classical_charge", [](bool& ok) {
    std::vector<double> ts;
    for (int i = 0; i <= 100; ++i) ts.push_back(0.1 * i);
    const auto s = classical_evolve(1.0, 0.0, 1.0, ts);
    const double q0 = classical_charge(s.front());
    double dev = 0.0;
    for (const auto& x : s) dev = std::max(dev, std::abs(classical_charge(x) - q0) / q0);
    ok = dev <= 1e-9;
    return fmt("relative drift", dev);
  }));

  out.push_back(check("linearized_uncertainty", [](bool& ok) {
    double dev = 0.0;
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      const Observables o = linearized_observables(t, 3.0, 1.0);
      dev = std::max(dev, std::abs(o.var_x1 * o.var_p1 - 1.0 / 16.0));
    }
    ok = dev <= 1e-15;
    return fmt("max |Vx Vp - 1/16|", dev);
  }));

  out.push_back(check("frame_shift_consistency", [](bool& ok) {
    const int dim = 24;
    const FrameShift d(FrameShift::Kind::displacement, dim);
    const FrameShift s(FrameShift::Kind::squeeze, dim);
    const double e1 = (d.matrix(cplx(0.7, -0.4)) - displacement_matrix(cplx(0.7, -0.4), dim)).cwiseAbs().maxCoeff();
    const double e2 = (s.matrix(cplx(0.3, 0.5)) - squeeze_matrix(cplx(0.3, 0.5), dim)).cwiseAbs().maxCoeff();
    ok = std::max(e1, e2) < 1e-10;
    return fmt("max element difference", std::max(e1, e2));
  }));

  return out;
}

}  // namespace pdc
