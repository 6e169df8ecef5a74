// SPDX-License-Identifier: Apache-2.0
//
// Mean-field layer: the pump is a c-number, the sub-harmonic evolves under
// S(eta(t)), and eta obeys the anharmonic pendulum
//   eta'' = -(K^2 / 4) sinh(2 eta),  eta(0) = 0,  eta'(0) = K sqrt(n2_0),
// with first integral (2/K^2) eta'^2 + sinh^2(eta) = 2 n2_0.
#pragma once

#include <vector>

#include "pdc/observables.hpp"

namespace pdc {

struct MeanFieldState {
  double eta = 0.0;
  double eta_dot = 0.0;
  double time = 0.0;
};

struct MeanFieldTrajectory {
  double n2_0 = 0.0;
  double K = 1.0;
  std::vector<double> times;  // raw time
  std::vector<double> eta;
  std::vector<double> eta_dot;
  std::vector<double> beta;   // pump displacement, K beta = eta' - eta'(0)
  std::vector<Observables> points;
  double max_energy_drift = 0.0;  // max |E - 2 n2_0|
};

// Energy integral (2/K^2) eta'^2 + sinh^2(eta).
double pendulum_energy(const MeanFieldState& s, double K);

// Observables implied by eta, eta' (sub-harmonic squeezed vacuum, coherent pump).
Observables meanfield_observables(double eta, double eta_dot, double n2_0, double K);

// Integrates on the given raw-time grid (starting at 0). Throws
// IntegrationError when the energy drift exceeds 100 tol (2 n2_0).
MeanFieldTrajectory integrate_meanfield(double n2_0, double K, const std::vector<double>& times,
                                        double tol = 1e-10);

// Raw times of the first `count` sign changes of eta', located to ~tol.
std::vector<double> pendulum_turning_times(double n2_0, double K, int count, double tol = 1e-12);

// arcsinh(sqrt(2 n2_0)): turning point of the pendulum.
double eta_max(double n2_0);

// Scaled optimum conversion time tau_conv = sqrt(n2_0) * int_0^{y_max} dy / sqrt(n2_0 - sinh^2(y)/2).
double t_conv(double n2_0);
// Scaled optimum squeezing time, tau_conv / 2.
double t_squeeze(double n2_0);

// Asymptotic mean-field squeezing floor 1/(32 n2_0) (~ e^{-2 eta_max}/4).
double mf_min_p_variance(double n2_0);
// Pump-noise-limited floor 1/(8 sqrt(n2_0)), used only as a cross-check.
double pump_noise_min_p_variance(double n2_0);

}  // namespace pdc
