// SPDX-License-Identifier: Apache-2.0
//
// Comparison layers: the classical c-number equations and the undepleted-pump
// (linearised) squeezing solution.
#pragma once

#include <vector>

#include "pdc/observables.hpp"

namespace pdc {

struct ClassicalState {
  cplx alpha1{};
  cplx alpha2{};
  double time = 0.0;
};

// |alpha1|^2 + 2 |alpha2|^2.
double classical_charge(const ClassicalState& s);

// alpha1' = K alpha2 alpha1^*, alpha2' = -(K^*/2) alpha1^2 on a raw-time grid
// starting at 0. Throws IntegrationError on non-finite growth or when the
// charge drifts by more than 1e-9 relative.
std::vector<ClassicalState> classical_evolve(cplx alpha1_0, cplx alpha2_0, cplx K,
                                             const std::vector<double>& times);

// c-number moments: no fluctuations, so quadrature variances are zero.
Observables classical_observables(const ClassicalState& s);

// Undepleted pump: S(K alpha2 t) acting on the sub-harmonic vacuum.
Observables linearized_observables(double t, double alpha2_0, double K);

}  // namespace pdc
