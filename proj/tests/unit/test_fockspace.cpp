// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdc/errors.hpp"
#include "pdc/fockspace.hpp"

using namespace pdc;

namespace {

CVector random_state(int d, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

double var_p(const CVector& psi) {
  const int d = static_cast<int>(psi.size());
  const CMatrix a = annihilation_matrix(d);
  const cplx ea = psi.dot(a * psi);
  const cplx ea2 = psi.dot(a * (a * psi));
  const double n = psi.dot(a.adjoint() * (a * psi)).real();
  return variance_p(n, ea, ea2);
}

}  // namespace

TEST(SectorDimension, SmallCases) {
  EXPECT_EQ(sector_dimension(0), 1);
  EXPECT_EQ(sector_dimension(2), 2);
  EXPECT_EQ(sector_dimension(5), 3);
  EXPECT_THROW(sector_dimension(-1), ArgumentError);
}

TEST(SectorDimension, CountsLabelsUpTo10000) {
  for (int N = 0; N <= 10000; N += 37) {
    int count = 0;
    for (int n2 = 0; 2 * n2 <= N; ++n2) ++count;
    ASSERT_EQ(sector_dimension(N), count) << N;
    SectorIndex s{N};
    for (int k = 0; k < s.dimension(); ++k) ASSERT_EQ(s.n1(k) + 2 * s.n2(k), N);
  }
}

TEST(CoherentAmplitudes, Vacuum) {
  const CVector c = coherent_amplitudes(0.0, 3);
  ASSERT_EQ(c.size(), 4);
  EXPECT_EQ(c(0), cplx(1.0));
  EXPECT_EQ(c.tail(3).norm(), 0.0);
}

TEST(CoherentAmplitudes, CutoffZero) {
  const CVector c = coherent_amplitudes(1.0, 0);
  ASSERT_EQ(c.size(), 1);
  EXPECT_NEAR(c(0).real(), std::exp(-0.5), 1e-15);
}

TEST(CoherentAmplitudes, RetainedWeightAt200) {
  const cplx a = std::sqrt(200.0);
  const int cut = coherent_cutoff(a, 8.0);
  EXPECT_EQ(cut, static_cast<int>(std::ceil(200.0 + 8.0 * std::sqrt(200.0))));
  const CVector c = coherent_amplitudes(a, cut);
  EXPECT_GE(c.squaredNorm(), 1.0 - 1e-10);
  // Poisson mean from the amplitudes.
  double mean = 0.0;
  for (int n = 0; n <= cut; ++n) mean += n * std::norm(c(n));
  EXPECT_NEAR(mean, 200.0, 1e-8);
}

TEST(CoherentAmplitudes, RecurrenceAgainstDirectProduct) {
  const cplx a(1.3, -0.7);
  const CVector c = coherent_amplitudes(a, 12);
  cplx direct = std::exp(-0.5 * std::norm(a));
  for (int n = 0; n <= 12; ++n) {
    if (n > 0) direct *= a / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(std::abs(c(n) - direct), 0.0, 1e-14) << n;
  }
}

TEST(CoherentAmplitudes, RejectsNonFinite) {
  EXPECT_THROW(coherent_amplitudes(cplx(NAN, 0.0), 3), ArgumentError);
}

TEST(InitialState, EmptyPumpIsVacuumSector) {
  const TwoModeState s = initial_state(0.0, 0.0, {});
  ASSERT_GE(s.sectors.size(), 1u);
  EXPECT_EQ(s.sectors[0].amplitudes(0), cplx(1.0));
  for (std::size_t N = 1; N < s.sectors.size(); ++N) EXPECT_EQ(s.sectors[N].weight(), 0.0);
}

TEST(InitialState, Pump200) {
  const TwoModeState s = initial_state(std::sqrt(200.0), 0.0, {});
  const int cut = static_cast<int>(std::ceil(200.0 + 8.0 * std::sqrt(200.0)));
  EXPECT_EQ(s.max_charge(), 2 * cut);
  EXPECT_LT(s.discarded_weight, 1e-10);
  EXPECT_NEAR(s.norm2(), 1.0, 1e-14);
  for (const auto& sec : s.sectors) {
    if (sec.sector.N % 2) {
      EXPECT_EQ(sec.weight(), 0.0);
    } else if (sec.weight() > 0.0) {
      // all weight on n1 = 0, i.e. k = N/2
      EXPECT_NEAR(std::norm(sec.amplitudes(sec.sector.N / 2)), sec.weight(), 0.0);
    }
  }
}

TEST(InitialState, TooSmallCapThrows) {
  TruncationSpec t;
  t.n2_max = 150;
  EXPECT_THROW(initial_state(std::sqrt(200.0), 0.0, t), TruncationError);
}

TEST(Hamiltonian, VacuumIsAnnihilated) {
  SectorState s;
  s.sector.N = 0;
  s.amplitudes = CVector::Ones(1);
  EXPECT_EQ(apply_hamiltonian(s, 1.0).amplitudes.norm(), 0.0);
}

TEST(Hamiltonian, SinglePumpPhoton) {
  // H |n1=0, n2=1> = i (K/2) sqrt(2) |n1=2, n2=0>
  SectorState s;
  s.sector.N = 2;
  s.amplitudes = CVector::Zero(2);
  s.amplitudes(1) = 1.0;
  const double K = 0.7;
  const CVector out = apply_hamiltonian(s, K).amplitudes;
  EXPECT_NEAR(std::abs(out(0) - cplx(0.0, 0.5 * K * std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_EQ(out(1), cplx(0.0));
}

TEST(Hamiltonian, Hermitian) {
  for (int N : {6, 7, 40}) {
    const int d = sector_dimension(N);
    const CVector phi = random_state(d, 1 + N), psi = random_state(d, 100 + N);
    CVector Hphi, Hpsi;
    const cplx K(0.8, -0.3);
    apply_hamiltonian(N, phi, K, Hphi);
    apply_hamiltonian(N, psi, K, Hpsi);
    const cplx lhs = phi.dot(Hpsi), rhs = Hphi.dot(psi);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs))) << N;
    const CMatrix H = sector_hamiltonian_dense(N, K);
    EXPECT_LE((H - H.adjoint()).norm(), 1e-14);
  }
}

TEST(Hamiltonian, CouplingMagnitude) {
  const int N = 11;
  for (int k = 1; k <= N / 2; ++k) {
    const double expect = 0.5 * std::sqrt(k * (N - 2.0 * k + 1) * (N - 2.0 * k + 2));
    EXPECT_NEAR(std::abs(hamiltonian_coupling(N, k, 1.0)), expect, 1e-12);
  }
}

TEST(Displacement, ZeroIsIdentity) {
  EXPECT_LE((displacement_matrix(0.0, 10) - CMatrix::Identity(10, 10)).norm(), 1e-14);
}

TEST(Displacement, VacuumOverlap) {
  const CMatrix D = displacement_matrix(1.0, 40);
  EXPECT_NEAR(std::abs(D(0, 0) - std::exp(-0.5)), 0.0, 1e-8);
  // Column 0 is the coherent state.
  const CVector c = coherent_amplitudes(1.0, 39);
  EXPECT_LE((D.col(0) - c).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Displacement, InverseOnLowerHalf) {
  const cplx a(1.2, 0.4);
  const int dim = static_cast<int>(4 * std::norm(a)) + 60;
  const CMatrix P = displacement_matrix(a, dim) * displacement_matrix(-a, dim);
  const int h = dim / 2;
  EXPECT_LE((P.topLeftCorner(h, h) - CMatrix::Identity(h, h)).cwiseAbs().maxCoeff(), 1e-8);
  for (int n = 0; n < h; ++n) EXPECT_NEAR(displacement_matrix(a, dim).col(n).norm(), 1.0, 1e-8);
}

TEST(Squeeze, ZeroIsIdentity) {
  EXPECT_LE((squeeze_matrix(0.0, 10) - CMatrix::Identity(10, 10)).norm(), 1e-14);
}

TEST(Squeeze, VacuumElement) {
  const CMatrix S = squeeze_matrix(0.5, 60);
  EXPECT_NEAR(std::abs(S(0, 0) - 1.0 / std::sqrt(std::cosh(0.5))), 0.0, 1e-8);
  // <2|S|0> = tanh(r) / (sqrt(2) sqrt(cosh r)) for S = exp(eta a^dag^2 / 2 - h.c.)
  EXPECT_NEAR(S(2, 0).real(), std::tanh(0.5) / std::sqrt(2.0 * std::cosh(0.5)), 1e-8);
}

TEST(Squeeze, SqueezedVacuumVariance) {
  const CMatrix S = squeeze_matrix(0.5, 60);
  EXPECT_NEAR(var_p(S.col(0)), std::exp(-1.0) / 4.0, 1e-6);
}

TEST(Squeeze, ParityIsExact) {
  const CMatrix S = squeeze_matrix(cplx(0.6, 0.3), 30);
  for (int m = 0; m < 30; ++m)
    for (int n = 0; n < 30; ++n)
      if ((m + n) % 2) ASSERT_EQ(S(m, n), cplx(0.0)) << m << "," << n;
}

TEST(Squeeze, UnitaryOnLowerHalf) {
  const cplx eta(0.8, 0.0);
  // Column n spreads to about n e^{2r} levels; 200 levels cover the first 20.
  const int dim = 200;
  const CMatrix S = squeeze_matrix(eta, dim);
  for (int n = 0; n < 20; ++n) EXPECT_NEAR(S.col(n).norm(), 1.0, 1e-8) << n;
}

TEST(Observables, VacuumVacuum) {
  const Observables o = observables(initial_state(0.0, 0.0, {}));
  EXPECT_EQ(o.n1, 0.0);
  EXPECT_EQ(o.n2, 0.0);
  EXPECT_DOUBLE_EQ(o.var_x1, 0.25);
  EXPECT_DOUBLE_EQ(o.var_p1, 0.25);
  EXPECT_DOUBLE_EQ(o.var_x2, 0.25);
  EXPECT_DOUBLE_EQ(o.var_p2, 0.25);
  EXPECT_DOUBLE_EQ(o.norm2, 1.0);
}

TEST(Observables, CoherentPump) {
  const Observables o = observables(initial_state(std::sqrt(200.0), 0.0, {}));
  EXPECT_NEAR(o.n2, 200.0, 1e-8);
  EXPECT_NEAR(std::abs(o.a2 - std::sqrt(200.0)), 0.0, 1e-9);
  EXPECT_NEAR(o.var_x2, 0.25, 1e-7);
  EXPECT_NEAR(o.var_p2, 0.25, 1e-7);
  EXPECT_EQ(o.a1, cplx(0.0));
  EXPECT_NEAR(o.manley_rowe, 400.0, 1e-8);
}

TEST(Observables, SeededSubharmonic) {
  const cplx a1(0.6, -0.2), a2(1.5, 0.5);
  TruncationSpec tight;
  tight.leak_tol = 1e-14;
  const Observables o = observables(initial_state(a2, a1, tight));
  EXPECT_NEAR(std::abs(o.a1 - a1), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(o.a1sq - a1 * a1), 0.0, 1e-10);
  EXPECT_NEAR(o.n1, std::norm(a1), 1e-10);
  EXPECT_NEAR(std::abs(o.a2 - a2), 0.0, 1e-10);
  EXPECT_NEAR(o.var_x1, 0.25, 1e-10);
}

TEST(Observables, NormOutsideToleranceThrows) {
  std::vector<CVector> amps = {CVector::Constant(1, 1.01)};
  EXPECT_THROW(observables_from_sectors(amps, 1e-6), IntegrityError);
}
