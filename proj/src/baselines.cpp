// SPDX-License-Identifier: Apache-2.0
#include "pdc/baselines.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "pdc/errors.hpp"
#include "pdc/ode.hpp"

namespace pdc {

namespace {

using Vec2c = Eigen::Vector2cd;

constexpr double kChargeTol = 1e-9;

}  // namespace

double classical_charge(const ClassicalState& s) {
  return std::norm(s.alpha1) + 2.0 * std::norm(s.alpha2);
}

std::vector<ClassicalState> classical_evolve(cplx alpha1_0, cplx alpha2_0, cplx K,
                                             const std::vector<double>& times) {
  auto finite = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!finite(alpha1_0) || !finite(alpha2_0) || !finite(K))
    throw ArgumentError("classical_evolve: non-finite input");

  auto rhs = [K](double, const Vec2c& y) -> Vec2c {
    return {K * y(1) * std::conj(y(0)), -0.5 * std::conj(K) * y(0) * y(0)};
  };
  DormandPrince<Vec2c, decltype(rhs)> integ(rhs, OdeTolerance{1e-13, 1e-15});

  std::vector<ClassicalState> out;
  out.reserve(times.size());
  Vec2c y(alpha1_0, alpha2_0);
  const double q0 = classical_charge({alpha1_0, alpha2_0, 0.0});
  double t = 0.0;
  for (double target : times) {
    if (target < t) throw ArgumentError("classical_evolve: time grid must be non-decreasing from 0");
    integ.advance(t, y, target);
    ClassicalState s{y(0), y(1), t};
    if (!finite(s.alpha1) || !finite(s.alpha2)) throw IntegrationError("classical_evolve: non-finite state");
    const double q = classical_charge(s);
    if (std::abs(q - q0) > kChargeTol * std::max(q0, 1e-300) && q0 > 0.0) {
      std::ostringstream msg;
      msg << "classical_evolve: conserved charge drifted to " << q << " from " << q0 << " at t = " << t;
      throw IntegrationError(msg.str());
    }
    out.push_back(s);
  }
  return out;
}

Observables classical_observables(const ClassicalState& s) {
  Observables o;
  o.n1 = std::norm(s.alpha1);
  o.n2 = std::norm(s.alpha2);
  o.a1 = s.alpha1;
  o.a2 = s.alpha2;
  o.a1sq = s.alpha1 * s.alpha1;
  o.var_x1 = o.var_p1 = o.var_x2 = o.var_p2 = 0.0;
  o.norm2 = 1.0;
  o.manley_rowe = o.n1 + 2.0 * o.n2;
  return o;
}

Observables linearized_observables(double t, double alpha2_0, double K) {
  if (!(alpha2_0 >= 0.0)) throw DomainError("linearized_observables: alpha2_0 must be >= 0");
  const double eta = K * alpha2_0 * t;
  Observables o;
  const double sh = std::sinh(eta);
  o.n1 = sh * sh;
  o.a1sq = 0.5 * std::sinh(2.0 * eta);
  o.var_x1 = 0.25 * std::exp(2.0 * eta);
  o.var_p1 = 0.25 * std::exp(-2.0 * eta);
  o.n2 = alpha2_0 * alpha2_0;
  o.a2 = alpha2_0;
  o.var_x2 = o.var_p2 = 0.25;
  o.norm2 = 1.0;
  o.manley_rowe = o.n1 + 2.0 * o.n2;
  return o;
}

}  // namespace pdc
