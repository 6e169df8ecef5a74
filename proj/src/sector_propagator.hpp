// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <memory>

#include "pdc/config.hpp"
#include "pdc/fockspace.hpp"

namespace pdc::detail {

// Advances the amplitudes of one sector between consecutive grid times.
class SectorPropagator {
 public:
  virtual ~SectorPropagator() = default;
  virtual void advance(CVector& psi, double t_from, double t_to) = 0;
};

// Diagonalises the tridiagonal block once; H = P A P^dag with P a diagonal
// phase matrix and A real symmetric tridiagonal.
class SectorExpmPropagator final : public SectorPropagator {
 public:
  SectorExpmPropagator(int N, cplx K);
  void advance(CVector& psi, double t_from, double t_to) override;

 private:
  int dim_;
  Eigen::VectorXcd phases_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  double cached_dt_ = -1.0;
  Eigen::VectorXcd cached_exp_;
};

// Adaptive Dormand-Prince on i psi' = H psi; fails on norm drift beyond
// 100 step_tol per unit scaled time.
class SectorOdePropagator final : public SectorPropagator {
 public:
  SectorOdePropagator(int N, cplx K, double step_tol, double time_scale);
  ~SectorOdePropagator() override;
  void advance(CVector& psi, double t_from, double t_to) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::unique_ptr<SectorPropagator> make_sector_propagator(int N, cplx K, const PropagatorSpec& spec,
                                                         double time_scale);

}  // namespace pdc::detail
