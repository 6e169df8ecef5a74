// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pdc/fockspace.hpp"
#include "pdc/observables.hpp"
#include "summation.hpp"

namespace pdc::detail {

// Running moments over sectors, fed in increasing N. Cross-sector terms of
// sector N need its lower neighbours N-1, N-2 and N-4 (nullptr when absent).
struct SectorMoments {
  CompensatedSum norm, n1, n2;
  CompensatedComplexSum a1, a2, a1sq, a2sq;

  void add(int N, const cplx* psi, int d, const cplx* lo1, const cplx* lo2, const cplx* lo4);
  Observables finish(double norm_tol) const;
};

}  // namespace pdc::detail
