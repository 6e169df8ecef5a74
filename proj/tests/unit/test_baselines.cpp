// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "pdc/baselines.hpp"
#include "pdc/errors.hpp"

using namespace pdc;

namespace {

std::vector<double> grid(double t_end, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_end * i / (n - 1);
  return t;
}

}  // namespace

TEST(Classical, VacuumSubharmonicIsStationary) {
  const auto s = classical_evolve(0.0, std::sqrt(200.0), 1.0, grid(1.0, 11));
  for (const auto& x : s) {
    EXPECT_EQ(x.alpha1, cplx(0.0));
    EXPECT_EQ(x.alpha2, cplx(std::sqrt(200.0)));
  }
}

TEST(Classical, SeedGrowsExponentially) {
  const double a2 = std::sqrt(200.0);
  const auto ts = grid(0.2, 21);
  const auto s = classical_evolve(1e-6, a2, 1.0, ts);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double ratio = std::abs(s[i].alpha1) / 1e-6;
    EXPECT_NEAR(std::log(ratio), a2 * ts[i], 1e-6);  // undepleted rate K alpha2
  }
}

TEST(Classical, PumplessSeedFeedsPumpNegatively) {
  const auto ts = grid(3.0, 31);
  const auto s = classical_evolve(1.0, 0.0, 1.0, ts);
  EXPECT_LT(s[1].alpha2.real(), 0.0);
  const double q0 = classical_charge(s.front());
  for (const auto& x : s) EXPECT_LE(std::abs(classical_charge(x) - q0) / q0, 1e-9);
}

TEST(Classical, ChargeConservedUpToScaledTimeTen) {
  const double a2 = std::sqrt(50.0);
  const auto s = classical_evolve(cplx(0.1, 0.05), a2, 1.0, grid(10.0 / a2, 101));
  const double q0 = classical_charge(s.front());
  for (const auto& x : s) EXPECT_LE(std::abs(classical_charge(x) - q0) / q0, 1e-9);
}

TEST(Classical, RejectsNonFinite) {
  EXPECT_THROW(classical_evolve(cplx(NAN, 0), 1.0, 1.0, grid(1.0, 3)), Error);
}

TEST(Linearized, VacuumAtZero) {
  const Observables o = linearized_observables(0.0, 5.0, 1.0);
  EXPECT_EQ(o.n1, 0.0);
  EXPECT_EQ(o.var_x1, 0.25);
  EXPECT_EQ(o.var_p1, 0.25);
}

TEST(Linearized, UnitSqueeze) {
  const Observables o = linearized_observables(0.1, 10.0, 1.0);  // K alpha2 t = 1
  EXPECT_NEAR(o.n1, 1.3811, 5e-5);
  EXPECT_NEAR(o.var_p1, 0.03383, 5e-6);
  EXPECT_NEAR(o.a1sq.real(), 0.5 * std::sinh(2.0), 1e-14);
  EXPECT_EQ(o.n2, 100.0);
}

TEST(Linearized, MinimumUncertaintyAndManleyRoweViolation) {
  double prev = 0.0;
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    const Observables o = linearized_observables(t, 1.0, 1.0);
    EXPECT_NEAR(o.var_x1 * o.var_p1, 1.0 / 16.0, 1e-15);
    EXPECT_GE(o.manley_rowe, prev);
    prev = o.manley_rowe;
  }
  EXPECT_GT(linearized_observables(1.0, 1.0, 1.0).manley_rowe, 2.0);
}

TEST(Linearized, RejectsNegativeAmplitude) {
  EXPECT_THROW(linearized_observables(1.0, -1.0, 1.0), DomainError);
}
