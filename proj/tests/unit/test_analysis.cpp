// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "pdc/analysis.hpp"
#include "pdc/driver.hpp"
#include "pdc/errors.hpp"

using namespace pdc;

namespace {

Trajectory synthetic(double n2_0, const std::vector<double>& n1) {
  Trajectory t;
  t.method = "synthetic";
  t.config.n2_0 = n2_0;
  for (std::size_t i = 0; i < n1.size(); ++i) {
    t.tau.push_back(0.1 * i);
    Observables o;
    o.n1 = n1[i];
    o.n2 = n2_0 - 0.5 * n1[i];
    o.a2 = std::sqrt(std::max(o.n2, 0.0));
    t.points.push_back(o);
  }
  return t;
}

}  // namespace

TEST(Efficiency, RatioToTwiceThePump) {
  const auto e = conversion_efficiency(synthetic(10.0, {0.0, 5.0, 20.0}), 10.0);
  EXPECT_EQ(e[0], 0.0);
  EXPECT_EQ(e[1], 0.25);
  EXPECT_EQ(e[2], 1.0);
}

TEST(Efficiency, ClipsRoundingOvershoot) {
  const auto e = conversion_efficiency(synthetic(10.0, {20.0 * (1.0 + 1e-9)}), 10.0);
  EXPECT_EQ(e[0], 1.0);
}

TEST(Efficiency, RejectsPhysicalOvershoot) {
  EXPECT_THROW(conversion_efficiency(synthetic(10.0, {20.1}), 10.0), IntegrityError);
}

TEST(Efficiency, RejectsMismatchedPump) {
  EXPECT_THROW(conversion_efficiency(synthetic(10.0, {1.0}), 11.0), ArgumentError);
}

TEST(Extremum, ParabolicRefinement) {
  std::vector<double> t, y;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(0.1 * i);
    y.push_back(3.0 - std::pow(t.back() - 1.234, 2));
  }
  const Extremum e = find_extremum(t, y, ExtremumKind::max);
  EXPECT_NEAR(e.time, 1.234, 1e-12);
  EXPECT_NEAR(e.value, 3.0, 1e-12);
  EXPECT_FALSE(e.boundary);
  EXPECT_EQ(e.index, 12u);
}

TEST(Extremum, BoundaryIsFlagged) {
  const Extremum e = find_extremum({0.0, 1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0, 5.0}, ExtremumKind::max);
  EXPECT_TRUE(e.boundary);
  EXPECT_EQ(e.time, 4.0);
  EXPECT_EQ(e.value, 5.0);
}

TEST(Extremum, Minimum) {
  const Extremum e = find_extremum({0.0, 1.0, 2.0, 3.0, 4.0}, {4.0, 1.0, 0.0, 1.0, 4.0}, ExtremumKind::min);
  EXPECT_NEAR(e.time, 2.0, 1e-12);
  EXPECT_NEAR(e.value, 0.0, 1e-12);
}

TEST(Extremum, ShortInputRejected) {
  EXPECT_THROW(find_extremum({0.0, 1.0}, {0.0, 1.0}, ExtremumKind::min), ArgumentError);
}

TEST(Features, ExactRunAtModeratePump) {
  SimConfig cfg;
  cfg.n2_0 = 20.0;
  cfg.n_points = 200;
  const Trajectory traj = simulate(cfg);
  const TrajectoryFeatures f = extract_features(traj);
  EXPECT_GT(f.max_conversion_efficiency, 0.5);
  EXPECT_LT(f.max_conversion_efficiency, 1.0);
  EXPECT_LT(f.t_of_min_var_p1, f.t_of_max_conversion);
  EXPECT_LT(f.min_var_p1, 0.25);
  EXPECT_GT(f.max_var_x2, 0.25);
  EXPECT_GE(f.pump_amplitude_min, 0.0);
  EXPECT_TRUE(f.has_variances);
  EXPECT_TRUE(f.warnings.empty());
}

TEST(Features, ClassicalRunHasNoVariances) {
  SimConfig cfg;
  cfg.method = Method::classical;
  cfg.seed_alpha1 = 0.1;
  cfg.n2_0 = 50.0;
  cfg.n_points = 50;
  const TrajectoryFeatures f = extract_features(simulate(cfg));
  EXPECT_FALSE(f.has_variances);
  EXPECT_GT(f.max_conversion_efficiency, 0.9);
}

TEST(Sweep, RowErrorsDoNotStopTheSweep) {
  SimConfig tmpl;
  tmpl.n_points = 60;
  tmpl.truncation.n2_max = 20;  // enough for 2 photons, too small for 40
  const auto rows = efficiency_sweep({2.0, 40.0}, tmpl);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].ok);
  EXPECT_FALSE(rows[1].ok);
  EXPECT_FALSE(rows[1].error.empty());
}

TEST(Compare, MeanFieldAndExactAgreeEarly) {
  SimConfig cfg;
  cfg.n2_0 = 50.0;
  cfg.n_points = 120;
  const CompareResult r = compare_methods(cfg, {"meanfield", "exact"});
  ASSERT_EQ(r.runs.size(), 2u);
  ASSERT_EQ(r.pairs.size(), 1u);
  ASSERT_TRUE(r.tau_pump_split.has_value());
  EXPECT_GT(*r.tau_pump_split, 0.5);
  ASSERT_TRUE(r.pairs[0].tau_first_5pct.has_value());
  EXPECT_GT(*r.pairs[0].tau_first_5pct, 0.5);
}

TEST(Compare, FailedMethodIsReportedNotFatal) {
  SimConfig cfg;
  cfg.n2_0 = 50.0;
  cfg.n_points = 40;
  const CompareResult r = compare_methods(cfg, {"meanfield", "nonsense"});
  EXPECT_EQ(r.runs.size(), 1u);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].first, "nonsense");
}
