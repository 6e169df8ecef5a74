// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace pdc {

using cplx = std::complex<double>;

// Moments of the two-mode state at one instant. Quadratures follow a = x + i p,
// so the vacuum variance is 1/4. Mode 1 is the sub-harmonic, mode 2 the pump.
struct Observables {
  double n1 = 0.0;
  double n2 = 0.0;
  cplx a1{};
  cplx a2{};
  cplx a1sq{};
  double var_x1 = 0.25;
  double var_p1 = 0.25;
  double var_x2 = 0.25;
  double var_p2 = 0.25;
  double norm2 = 1.0;
  double manley_rowe = 0.0;  // <n1 + 2 n2>
};

// Variance helpers shared by every model layer: <x^2> = (2 Re<a^2> + 2<n> + 1)/4.
inline double variance_x(double n, cplx a, cplx asq) {
  return (2.0 * asq.real() + 2.0 * n + 1.0) / 4.0 - a.real() * a.real();
}
inline double variance_p(double n, cplx a, cplx asq) {
  return (2.0 * n + 1.0 - 2.0 * asq.real()) / 4.0 - a.imag() * a.imag();
}

}  // namespace pdc
