// SPDX-License-Identifier: Apache-2.0
//
// Truncated two-mode Fock space for degenerate down-conversion.
//
// The interaction conserves N = n1 + 2 n2, so the joint state splits into
// independent sectors. Sector N is spanned by |n1 = N - 2k, n2 = k> for
// k = 0 .. floor(N/2), and the amplitudes of a SectorState are indexed by k.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "pdc/observables.hpp"

namespace pdc {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct SectorIndex {
  int N = 0;

  int dimension() const { return N / 2 + 1; }
  int n1(int k) const { return N - 2 * k; }
  int n2(int k) const { return k; }
};

int sector_dimension(int N);

struct SectorState {
  SectorIndex sector;
  CVector amplitudes;
  double time = 0.0;

  double weight() const { return amplitudes.squaredNorm(); }
};

struct TruncationSpec {
  int n2_max = 0;          // 0 = no cap on the pump cutoff
  double sigma_mult = 8.0;
  double leak_tol = 1e-10;
  double norm_tol = 1e-6;  // accepted |norm^2 - 1| when evaluating observables
};

// Joint state; sectors[N] holds sector N for N = 0 .. size()-1. Sectors that
// carry no weight are kept (empty of weight) so lookups stay O(1).
struct TwoModeState {
  std::vector<SectorState> sectors;
  TruncationSpec truncation;
  double discarded_weight = 0.0;  // coherent-state weight beyond the cutoffs

  int max_charge() const { return static_cast<int>(sectors.size()) - 1; }
  const SectorState* find(int N) const {
    return (N >= 0 && N < static_cast<int>(sectors.size())) ? &sectors[N] : nullptr;
  }
  double norm2() const;
};

// Displacement alpha of the pump and squeeze eta of the sub-harmonic that
// define the moving reference frame D2(alpha) S1(eta).
struct FrameParams {
  cplx alpha{};
  cplx eta{};
};

// Coherent-state amplitudes exp(-|a|^2/2) a^n / sqrt(n!) for n = 0..cutoff,
// generated in the log domain so large |a| neither overflows nor underflows early.
CVector coherent_amplitudes(cplx alpha, int cutoff);

// ceil(|a|^2 + sigma_mult |a|), floored at a few levels, capped by n_max > 0.
int coherent_cutoff(cplx alpha, double sigma_mult, int n_max = 0);

// Product state |alpha1> (x) |alpha2> split into sectors and renormalised.
// Throws TruncationError when the retained weight is below 1 - leak_tol.
TwoModeState initial_state(cplx alpha2, cplx alpha1, const TruncationSpec& truncation);

// Off-diagonal element <k-1| H |k> of sector N for
// H = (i/2) (K a1^dag^2 a2 - K^* a1^2 a2^dag).
cplx hamiltonian_coupling(int N, int k, cplx K);

SectorState apply_hamiltonian(const SectorState& state, cplx K);
void apply_hamiltonian(int N, const CVector& in, cplx K, CVector& out);

CMatrix sector_hamiltonian_dense(int N, cplx K);

// Truncated unitaries. The generator is exponentiated at a padded dimension
// (max(20, dim/4) extra levels) and the leading dim x dim block is returned.
CMatrix displacement_matrix(cplx alpha, int dim);
CMatrix squeeze_matrix(cplx eta, int dim);
int padded_dimension(int dim);

// Creation / annihilation in a truncated basis.
CMatrix annihilation_matrix(int dim);

Observables observables(const TwoModeState& state);

// Same reduction over bare amplitude vectors; amps[N] may be empty.
Observables observables_from_sectors(const std::vector<CVector>& amps, double norm_tol);

}  // namespace pdc
