// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "pdc/errors.hpp"

namespace pdc::detail {

// Lanczos approximation of exp(-i H h) v for Hermitian H given as a matvec.
// The step is subdivided until the a-posteriori error estimate
// beta_m |e_m^T exp(-i T h) e_1| falls below tol.
template <class MatVec>
class LanczosExp {
 public:
  using Vec = Eigen::VectorXcd;

  LanczosExp(MatVec op, int max_dim, double tol) : op_(std::move(op)), max_dim_(max_dim), tol_(tol) {}

  // Advances v by exp(-i H h). Returns the number of substeps taken.
  int apply(Vec& v, double h) {
    int substeps = 0;
    double remaining = h;
    while (remaining > 0.0) {
      double step = std::min(remaining, last_step_ > 0.0 ? 2.0 * last_step_ : remaining);
      const Eigen::VectorXcd coef = build(v, step);
      const double nv = v.norm();
      v = basis_[0] * (nv * coef(0));
      for (int j = 1; j < static_cast<int>(coef.size()); ++j) v += (nv * coef(j)) * basis_[j];
      last_step_ = step;
      remaining -= step;
      if (remaining <= 1e-15 * h) remaining = 0.0;
      ++substeps;
    }
    return substeps;
  }

  long matvecs() const { return matvecs_; }

 private:
  // Grows the Lanczos basis until the error estimate for `step` drops below
  // tol; shrinks `step` when the full basis is not enough. Only the
  // three-term recurrence is kept: for matrix functions at this basis size
  // the loss of orthogonality does not spoil the approximation.
  Eigen::VectorXcd build(const Vec& v, double& step) {
    basis_.resize(1);
    alpha_.clear();
    beta_.clear();
    const double nv = v.norm();
    if (nv == 0.0) {
      basis_[0] = v;
      return Eigen::VectorXcd::Zero(1);
    }
    basis_[0] = v / nv;
    Vec w;
    double err = 0.0;
    for (int j = 0;; ++j) {
      op_(basis_[j], w);
      ++matvecs_;
      const double a = basis_[j].dot(w).real();
      alpha_.push_back(a);
      w -= a * basis_[j];
      if (j > 0) w -= beta_[j - 1] * basis_[j - 1];
      const double b = w.norm();
      beta_.push_back(b);
      if (b <= 1e-13 * std::max(1.0, std::abs(a))) {
        beta_.back() = 0.0;
        return small_exp(step, err);  // invariant subspace: exact
      }
      if (j + 1 >= 4 || j + 1 == max_dim_) {
        Eigen::VectorXcd c = small_exp(step, err);
        if (err <= tol_) return c;
        if (j + 1 == max_dim_) {
          for (int tries = 0; err > tol_; ++tries) {
            if (tries > 60) throw IntegrationError("krylov: step size underflow");
            step *= 0.5;
            c = small_exp(step, err);
          }
          return c;
        }
      }
      basis_.push_back(w / b);
    }
  }

  // Coefficients of exp(-i T h) e1 in the Lanczos basis and the error estimate.
  Eigen::VectorXcd small_exp(double h, double& err) const {
    const int m = static_cast<int>(alpha_.size());
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
    for (int i = 0; i < m; ++i) diag(i) = alpha_[i];
    for (int i = 0; i + 1 < m; ++i) sub(i) = beta_[i];
    Eigen::VectorXcd c(m);
    if (m == 1) {
      c(0) = std::polar(1.0, -diag(0) * h);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const Eigen::MatrixXd& V = es.eigenvectors();
      Eigen::VectorXcd w(m);
      for (int i = 0; i < m; ++i) w(i) = std::polar(1.0, -es.eigenvalues()(i) * h) * V(0, i);
      c = V.cast<std::complex<double>>() * w;
    }
    const double residual = beta_[m - 1];
    err = residual * std::abs(c(m - 1)) * h;
    return c;
  }

  MatVec op_;
  int max_dim_;
  double tol_;
  std::vector<Vec> basis_;
  std::vector<double> alpha_, beta_;
  double last_step_ = 0.0;
  long matvecs_ = 0;
};

}  // namespace pdc::detail
