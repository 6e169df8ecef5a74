// SPDX-License-Identifier: Apache-2.0
#include "pdc/meanfield.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

#include "pdc/errors.hpp"
#include "pdc/ode.hpp"

namespace pdc {

namespace {

using Vec2 = Eigen::Vector2d;

struct PendulumRhs {
  double k2_over_4;
  Vec2 operator()(double, const Vec2& y) const { return {y(1), -k2_over_4 * std::sinh(2.0 * y(0))}; }
};

using PendulumIntegrator = DormandPrince<Vec2, PendulumRhs>;

PendulumIntegrator make_pendulum(double K, double tol) {
  // The energy check is in terms of the global drift, so steps run tighter than tol.
  return PendulumIntegrator(PendulumRhs{0.25 * K * K}, OdeTolerance{0.05 * tol, 0.05 * tol});
}

void check_inputs(double n2_0, double K) {
  if (!std::isfinite(n2_0) || n2_0 < 0.0) throw DomainError("meanfield: n2_0 must be finite and >= 0");
  if (!std::isfinite(K) || K <= 0.0) throw DomainError("meanfield: K must be finite and > 0");
}

// sinh(x)/x without cancellation near 0.
double sinhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

}  // namespace

double pendulum_energy(const MeanFieldState& s, double K) {
  const double sh = std::sinh(s.eta);
  return 2.0 / (K * K) * s.eta_dot * s.eta_dot + sh * sh;
}

Observables meanfield_observables(double eta, double eta_dot, double n2_0, double K) {
  Observables o;
  const double sh = std::sinh(eta);
  o.n1 = sh * sh;
  o.a1sq = 0.5 * std::sinh(2.0 * eta);
  o.a2 = eta_dot / K;
  o.n2 = n2_0 - 0.5 * o.n1;
  o.var_x1 = 0.25 * std::exp(2.0 * eta);
  o.var_p1 = 0.25 * std::exp(-2.0 * eta);
  o.var_x2 = 0.25;
  o.var_p2 = 0.25;
  o.norm2 = 1.0;
  o.manley_rowe = o.n1 + 2.0 * o.n2;
  return o;
}

MeanFieldTrajectory integrate_meanfield(double n2_0, double K, const std::vector<double>& times,
                                        double tol) {
  check_inputs(n2_0, K);
  if (!(tol > 0.0)) throw DomainError("integrate_meanfield: tol must be > 0");
  if (times.empty()) throw ArgumentError("integrate_meanfield: empty time grid");

  MeanFieldTrajectory traj;
  traj.n2_0 = n2_0;
  traj.K = K;
  const double eta_dot0 = K * std::sqrt(n2_0);
  const double e0 = 2.0 * n2_0;
  const double drift_scale = std::max(e0, 1e-300);

  auto integ = make_pendulum(K, tol);
  Vec2 y(0.0, eta_dot0);
  double t = 0.0;
  for (double target : times) {
    if (target < t) throw ArgumentError("integrate_meanfield: time grid must be non-decreasing from 0");
    integ.advance(t, y, target);
    const MeanFieldState s{y(0), y(1), t};
    const double drift = std::abs(pendulum_energy(s, K) - e0);
    traj.max_energy_drift = std::max(traj.max_energy_drift, drift);
    if (n2_0 > 0.0 && drift > 100.0 * tol * drift_scale) {
      std::ostringstream msg;
      msg << "integrate_meanfield: energy drift " << drift << " exceeds 100 tol (2 n2_0) at t = " << t;
      throw IntegrationError(msg.str());
    }
    traj.times.push_back(t);
    traj.eta.push_back(y(0));
    traj.eta_dot.push_back(y(1));
    traj.beta.push_back((y(1) - eta_dot0) / K);
    traj.points.push_back(meanfield_observables(y(0), y(1), n2_0, K));
  }
  return traj;
}

std::vector<double> pendulum_turning_times(double n2_0, double K, int count, double tol) {
  check_inputs(n2_0, K);
  std::vector<double> out;
  if (n2_0 == 0.0 || count <= 0) return out;

  const double chunk = t_conv(n2_0) / (K * std::sqrt(n2_0)) / 64.0;
  auto integ = make_pendulum(K, 1e-12);
  Vec2 y(0.0, K * std::sqrt(n2_0));
  double t = 0.0;
  while (static_cast<int>(out.size()) < count) {
    const auto saved_integ = integ;
    const Vec2 y_a = y;
    const double t_a = t;
    integ.advance(t, y, t_a + chunk);
    if ((y_a(1) > 0.0) == (y(1) > 0.0)) continue;

    double lo = t_a, hi = t;
    while (hi - lo > tol * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      auto probe = saved_integ;
      Vec2 ym = y_a;
      double tm = t_a;
      probe.advance(tm, ym, mid);
      if ((ym(1) > 0.0) == (y_a(1) > 0.0)) lo = mid;
      else hi = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

double eta_max(double n2_0) {
  if (!(n2_0 >= 0.0)) throw DomainError("eta_max: n2_0 must be >= 0");
  return std::asinh(std::sqrt(2.0 * n2_0));
}

double t_conv(double n2_0) {
  if (!(n2_0 > 0.0) || !std::isfinite(n2_0)) throw DomainError("t_conv: n2_0 must be finite and > 0");
  const double ym = eta_max(n2_0);
  // y = ym (1 - s^2) removes the inverse-square-root endpoint, and
  // sinh^2(ym) - sinh^2(y) = sinh(ym - y) sinh(ym + y) keeps it cancellation-free.
  auto f = [ym](double s) {
    const double u = ym * s * s;
    const double den = 0.5 * ym * sinhc(u) * std::sinh(ym * (2.0 - s * s));
    return 2.0 * ym / std::sqrt(den);
  };
  double err = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14, &err);
  return std::sqrt(n2_0) * integral;
}

double t_squeeze(double n2_0) { return 0.5 * t_conv(n2_0); }

double mf_min_p_variance(double n2_0) {
  if (!(n2_0 > 0.0)) throw DomainError("mf_min_p_variance: n2_0 must be > 0");
  return 1.0 / (32.0 * n2_0);
}

double pump_noise_min_p_variance(double n2_0) {
  if (!(n2_0 > 0.0)) throw DomainError("pump_noise_min_p_variance: n2_0 must be > 0");
  return 1.0 / (8.0 * std::sqrt(n2_0));
}

}  // namespace pdc
