// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

#include "pdc/analysis.hpp"
#include "pdc/baselines.hpp"
#include "pdc/errors.hpp"
#include "pdc/exactdyn.hpp"
#include "pdc/meanfield.hpp"

using namespace pdc;

namespace {

SectorState random_sector(int N, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  SectorState s;
  s.sector.N = N;
  s.amplitudes = CVector(sector_dimension(N));
  for (int k = 0; k < s.amplitudes.size(); ++k) s.amplitudes(k) = cplx(g(rng), g(rng));
  s.amplitudes.normalize();
  return s;
}

PropagatorSpec spec_for(PropagatorMethod m, double tol = 1e-10) {
  PropagatorSpec p;
  p.method = m;
  p.step_tol = tol;
  return p;
}

SimConfig config(double n2, double tmax, int points) {
  SimConfig c;
  c.n2_0 = n2;
  c.t_max_scaled = tmax;
  c.n_points = points;
  return c;
}

}  // namespace

TEST(PropagateSector, VacuumSectorIsStatic) {
  SectorState s;
  s.sector.N = 0;
  s.amplitudes = CVector::Ones(1);
  for (auto m : {PropagatorMethod::sector_expm, PropagatorMethod::sector_ode}) {
    const auto h = propagate_sector(s, 1.0, {0.0, 1.0, 5.0}, spec_for(m));
    for (const auto& x : h) EXPECT_EQ(x.amplitudes(0), cplx(1.0));
  }
}

TEST(PropagateSector, TwoPhotonSectorRabi) {
  SectorState s;
  s.sector.N = 2;
  s.amplitudes = CVector::Zero(2);
  s.amplitudes(1) = 1.0;
  std::vector<double> ts;
  for (int i = 0; i <= 30; ++i) ts.push_back(0.2 * i);
  for (auto m : {PropagatorMethod::sector_expm, PropagatorMethod::sector_ode}) {
    const auto h = propagate_sector(s, 1.0, ts, spec_for(m, 1e-12));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double expect = std::pow(std::sin(ts[i] / std::sqrt(2.0)), 2);
      EXPECT_NEAR(std::norm(h[i].amplitudes(0)), expect, 1e-9) << ts[i];
      EXPECT_EQ(h[i].time, ts[i]);
    }
  }
}

TEST(PropagateSector, SmallSectorsMatchDenseExponential) {
  for (int N = 0; N <= 8; ++N) {
    const SectorState s = random_sector(N, 7 + N);
    const CMatrix U = (cplx(0.0, -3.0) * sector_hamiltonian_dense(N, 1.0)).exp();
    const CVector ref = U * s.amplitudes;
    for (auto m : {PropagatorMethod::sector_expm, PropagatorMethod::sector_ode}) {
      const auto h = propagate_sector(s, 1.0, {0.0, 3.0}, spec_for(m, 1e-12));
      EXPECT_LE((h[1].amplitudes - ref).cwiseAbs().maxCoeff(), 1e-8) << "N=" << N;
    }
  }
}

TEST(PropagateSector, OdeAndExpmAgreeAtN8) {
  const SectorState s = random_sector(8, 99);
  const auto a = propagate_sector(s, 1.0, {0.0, 1.0, 2.0, 3.0}, spec_for(PropagatorMethod::sector_expm));
  const auto b = propagate_sector(s, 1.0, {0.0, 1.0, 2.0, 3.0}, spec_for(PropagatorMethod::sector_ode, 1e-12));
  for (int i = 0; i < 4; ++i) EXPECT_LE((a[i].amplitudes - b[i].amplitudes).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(PropagateSector, ComplexCouplingStaysUnitary) {
  const SectorState s = random_sector(30, 5);
  const auto h = propagate_sector(s, std::polar(1.0, 0.7), {0.0, 0.5, 2.0}, spec_for(PropagatorMethod::sector_expm));
  for (const auto& x : h) EXPECT_NEAR(x.weight(), 1.0, 1e-13);
}

TEST(PropagateSector, GridMustStartAtStateTime) {
  const SectorState s = random_sector(4, 1);
  EXPECT_THROW(propagate_sector(s, 1.0, {0.5, 1.0}, spec_for(PropagatorMethod::sector_expm)), ArgumentError);
}

TEST(PropagateSector, DriftBudgetFailureNamesSector) {
  // A loose tolerance on a stiff sector overshoots the 100 step_tol norm budget.
  const SectorState s = random_sector(200, 3);
  try {
    propagate_sector(s, 1.0, {0.0, 5.0}, spec_for(PropagatorMethod::sector_ode, 1e-3));
    FAIL() << "expected an integration failure";
  } catch (const IntegrationError& e) {
    EXPECT_NE(std::string(e.what()).find("sector 200"), std::string::npos) << e.what();
  }
}

TEST(EvolveExact, EmptyPumpIsStatic) {
  const Trajectory t = evolve_exact(config(0.0, 5.0, 11));
  for (const auto& p : t.points) {
    EXPECT_EQ(p.n1, 0.0);
    EXPECT_EQ(p.n2, 0.0);
    EXPECT_DOUBLE_EQ(p.norm2, 1.0);
  }
}

TEST(EvolveExact, ConservationAndParity) {
  for (auto m : {PropagatorMethod::sector_expm, PropagatorMethod::sector_ode}) {
    SimConfig c = config(20.0, 2.0 * t_conv(20.0), 60);
    c.propagator.method = m;
    const Trajectory t = evolve_exact(c);
    // The ODE path is held to its norm budget of 10 step_tol per unit scaled time.
    const double budget = m == PropagatorMethod::sector_expm ? 1e-10 : 10.0 * c.propagator.step_tol * t.tau.back();
    EXPECT_LE(t.manley_rowe_drift, budget);
    for (const auto& p : t.points) {
      EXPECT_NEAR(p.norm2, 1.0, 1e-6);
      EXPECT_EQ(p.a1, cplx(0.0));  // only even sectors are populated
    }
  }
}

TEST(EvolveExact, OdeMatchesExpmTrajectory) {
  SimConfig c = config(20.0, 4.0, 21);
  const Trajectory a = evolve_exact(c);
  c.propagator.method = PropagatorMethod::sector_ode;
  c.propagator.step_tol = 1e-12;
  const Trajectory b = evolve_exact(c);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a.points[i].n1, b.points[i].n1, 1e-8);
    EXPECT_NEAR(std::abs(a.points[i].a2 - b.points[i].a2), 0.0, 1e-8);
  }
}

TEST(EvolveExact, ThreadCountDoesNotChangeResults) {
  SimConfig c = config(30.0, 3.0, 31);
  const Trajectory a = evolve_exact(c);
  c.threads = 3;
  const Trajectory b = evolve_exact(c);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.points[i].n1, b.points[i].n1);
    EXPECT_EQ(a.points[i].a2, b.points[i].a2);
    EXPECT_EQ(a.points[i].a1sq, b.points[i].a1sq);
  }
}

TEST(EvolveExact, ShortTimesFollowLinearizedSolution) {
  const Trajectory t = evolve_exact(config(100.0, 0.3, 31));
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double lin = std::pow(std::sinh(t.tau[i]), 2);
    EXPECT_LE(std::abs(t.points[i].n1 - lin) / lin, 0.05) << t.tau[i];
  }
}

TEST(EvolveExact, SeededSubharmonicPopulatesOddSectors) {
  SimConfig c = config(10.0, 1.0, 11);
  c.seed_alpha1 = 0.5;
  c.truncation.leak_tol = 1e-14;
  const Trajectory t = evolve_exact(c);
  EXPECT_NEAR(std::abs(t.points[0].a1 - 0.5), 0.0, 1e-10);
  EXPECT_GT(std::abs(t.points.back().a1), 0.5);  // phase-sensitive amplification
  EXPECT_LE(t.manley_rowe_drift, 1e-10);
}

TEST(EvolveExact, GridIsUniformInScaledTime) {
  const auto g = scaled_grid(config(200.0, 0.0, 400));
  ASSERT_EQ(g.size(), 400u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 2.0 * t_conv(200.0), 1e-12);
}

TEST(Gauge, ZeroPhaseIsIdentical) {
  const GaugeReport r = gauge_check(config(20.0, 6.0, 61), 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_deviation, 0.0);
}

TEST(Gauge, QuarterAndHalfTurn) {
  for (double phi : {M_PI / 2, M_PI}) {
    const GaugeReport r = gauge_check(config(20.0, 6.0, 61), phi);
    EXPECT_TRUE(r.passed) << phi << " " << r.max_deviation << " " << r.worst_field;
    EXPECT_LE(r.max_deviation, 1e-8);
  }
}

TEST(Gauge, PumpPhaseRotatesAmplitude) {
  SimConfig c = config(20.0, 3.0, 31);
  c.gauge_phase = 0.4;
  const Trajectory t = evolve_exact(c);
  for (const auto& p : t.points)
    if (std::abs(p.a2) > 1e-6) EXPECT_NEAR(std::remainder(std::arg(p.a2) - 0.4, 2 * M_PI), 0.0, 1e-8);
}

TEST(AdaptiveFrame, EmptyPumpNeverMoves) {
  SimConfig c = config(0.0, 2.0, 5);
  const Trajectory t = evolve_adaptive_frame(c, c.propagator);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t.frame_alpha[i], cplx(0.0));
    EXPECT_EQ(t.frame_eta[i], 0.0);
    EXPECT_EQ(t.points[i].n1, 0.0);
  }
}

TEST(AdaptiveFrame, InitialSqueezeRate) {
  for (auto tracking : {SqueezeTracking::pump_integral, SqueezeTracking::covariance}) {
    SimConfig c = config(200.0, 0.05, 6);
    c.propagator.squeeze_tracking = tracking;
    c.propagator.dt = 0.01;
    const Trajectory t = evolve_adaptive_frame(c, c.propagator);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_NEAR(std::abs(t.frame_alpha[i]), std::sqrt(200.0), 1e-3);
      EXPECT_NEAR(t.frame_eta[i], t.tau[i], 1e-3) << t.tau[i];
    }
  }
}

TEST(AdaptiveFrame, MatchesSectorEvolutionAtModerateDrive) {
  SimConfig c = config(20.0, t_conv(20.0), 31);
  c.propagator.pump_frame_dim = 80;
  c.propagator.sub_frame_dim = 60;
  const Trajectory a = evolve_adaptive_frame(c, c.propagator);
  const Trajectory e = evolve_exact(c);
  for (std::size_t i = 1; i < a.size(); ++i) {
    EXPECT_LE(std::abs(a.points[i].n1 - e.points[i].n1) / e.points[i].n1, 1e-4) << a.tau[i];
    EXPECT_NEAR(std::abs(a.points[i].a2 - e.points[i].a2), 0.0, 1e-3);
    EXPECT_LE(a.leak_pump[i], 1e-4);
    EXPECT_LE(a.leak_sub[i], 1e-4);
  }
}

TEST(AdaptiveFrame, OddSubharmonicPopulationStaysNegligible) {
  SimConfig c = config(20.0, 2.0, 11);
  c.propagator.pump_frame_dim = 60;
  c.propagator.sub_frame_dim = 48;
  const Trajectory a = evolve_adaptive_frame(c, c.propagator);
  for (const auto& p : a.points) EXPECT_LE(std::abs(p.a1), 1e-8);
}

TEST(AdaptiveFrame, SmallFrameReportsOffendingMode) {
  SimConfig c = config(200.0, 3.0, 31);
  c.propagator.pump_frame_dim = 400;
  c.propagator.sub_frame_dim = 16;
  try {
    evolve_adaptive_frame(c, c.propagator);
    FAIL() << "expected a basis-too-small error";
  } catch (const BasisTooSmallError& e) {
    EXPECT_NE(std::string(e.what()).find("sub-harmonic"), std::string::npos) << e.what();
  }
}
