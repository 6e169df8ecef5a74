// SPDX-License-Identifier: Apache-2.0
//
// Embedded Dormand-Prince 5(4) integrator with FSAL and PI-free step control.
// State is any fixed or dynamic Eigen column vector (real or complex).
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pdc/errors.hpp"

namespace pdc {

struct OdeTolerance {
  double rtol = 1e-10;
  double atol = 1e-10;
};

template <class State, class Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, OdeTolerance tol, long max_steps = 50'000'000)
      : rhs_(std::move(rhs)), tol_(tol), max_steps_(max_steps) {}

  // Advances (t, y) to exactly t_end. Step size carries over between calls.
  void advance(double& t, State& y, double t_end) {
    if (t_end == t) return;
    const double dir = t_end > t ? 1.0 : -1.0;
    if (!have_f_) {
      f0_ = rhs_(t, y);
      have_f_ = true;
    }
    if (h_ == 0.0) h_ = initial_step(t, y, dir);
    while ((t_end - t) * dir > 0.0) {
      if (accepted_ + rejected_ >= max_steps_) fail(t, "step budget exhausted");
      double h = dir * std::min(std::abs(h_), std::abs(t_end - t));
      const bool clipped = std::abs(h) < std::abs(h_);
      const double err = attempt(t, y, h);
      if (!std::isfinite(err)) fail(t, "non-finite state");
      if (err <= 1.0) {
        t = (std::abs(t_end - (t + h)) <= 1e-15 * std::max(1.0, std::abs(t_end))) ? t_end : t + h;
        y = y_new_;
        f0_ = f_new_;
        ++accepted_;
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (!clipped) h_ = h * fac;
        else h_ = dir * std::max(std::abs(h_), std::abs(h * fac));
      } else {
        ++rejected_;
        h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
        if (std::abs(h_) < 1e-15 * std::max(1.0, std::abs(t))) fail(t, "step size underflow");
      }
    }
  }

  long accepted() const { return accepted_; }
  long rejected() const { return rejected_; }
  double step_size() const { return h_; }

  // Forget cached derivative (call after modifying y externally).
  void reset() {
    have_f_ = false;
  }

 private:
  [[noreturn]] void fail(double t, const char* why) const {
    std::ostringstream msg;
    msg << "ode: " << why << " at t = " << t;
    throw IntegrationError(msg.str());
  }

  double error_norm(const State& y, const State& y_new, const State& err) const {
    const auto scale = (tol_.atol + tol_.rtol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array());
    return (err.cwiseAbs().array() / scale).maxCoeff();
  }

  double initial_step(double t, const State& y, double dir) {
    const auto sc = (tol_.atol + tol_.rtol * y.cwiseAbs().array());
    const double d0 = (y.cwiseAbs().array() / sc).matrix().norm();
    const double d1 = (f0_.cwiseAbs().array() / sc).matrix().norm();
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    const State y1 = y + dir * h0 * f0_;
    const State f1 = rhs_(t + dir * h0, y1);
    const double d2 = ((f1 - f0_).cwiseAbs().array() / sc).matrix().norm() / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return dir * std::min(100.0 * h0, h1);
  }

  double attempt(double t, const State& y, double h) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const State& k1 = f0_;
    const State k2 = rhs_(t + c2 * h, y + h * (a21 * k1));
    const State k3 = rhs_(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const State k4 = rhs_(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const State k5 = rhs_(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const State k6 = rhs_(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y_new_ = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f_new_ = rhs_(t + h, y_new_);
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * f_new_);
    return error_norm(y, y_new_, err);
  }

  Rhs rhs_;
  OdeTolerance tol_;
  long max_steps_;
  double h_ = 0.0;
  bool have_f_ = false;
  State f0_;
  State y_new_;
  State f_new_;
  long accepted_ = 0;
  long rejected_ = 0;
};

template <class State, class Rhs>
DormandPrince<State, Rhs> make_dormand_prince(Rhs rhs, OdeTolerance tol) {
  return DormandPrince<State, Rhs>(std::move(rhs), tol);
}

}  // namespace pdc
