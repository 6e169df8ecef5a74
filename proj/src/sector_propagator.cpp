// SPDX-License-Identifier: Apache-2.0
#include "sector_propagator.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "pdc/errors.hpp"
#include "pdc/ode.hpp"

namespace pdc::detail {

SectorExpmPropagator::SectorExpmPropagator(int N, cplx K) : dim_(sector_dimension(N)) {
  phases_ = Eigen::VectorXcd::Ones(dim_);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim_);
  Eigen::VectorXd sub(std::max(dim_ - 1, 0));
  for (int k = 1; k < dim_; ++k) {
    const cplx h = hamiltonian_coupling(N, k, K);
    const double mag = std::abs(h);
    sub(k - 1) = mag;
    phases_(k) = mag > 0.0 ? phases_(k - 1) * std::conj(h) / mag : phases_(k - 1);
  }
  if (dim_ == 1) {
    eigenvalues_ = Eigen::VectorXd::Zero(1);
    eigenvectors_ = Eigen::MatrixXd::Identity(1, 1);
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "sector " << N << ": tridiagonal eigensolver failed";
    throw IntegrationError(msg.str());
  }
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

void SectorExpmPropagator::advance(CVector& psi, double t_from, double t_to) {
  const double dt = t_to - t_from;
  if (dt == 0.0) return;
  if (dt != cached_dt_) {
    cached_exp_.resize(dim_);
    for (int j = 0; j < dim_; ++j) cached_exp_(j) = std::polar(1.0, -eigenvalues_(j) * dt);
    cached_dt_ = dt;
  }
  // psi <- P V e^{-i L dt} V^T P^dag psi
  const Eigen::VectorXcd u = psi.cwiseProduct(phases_.conjugate());
  const Eigen::VectorXcd re = eigenvectors_.transpose() * u.real();
  const Eigen::VectorXcd im = eigenvectors_.transpose() * u.imag();
  Eigen::VectorXcd w = (re + cplx(0.0, 1.0) * im).cwiseProduct(cached_exp_);
  const Eigen::VectorXd wr = eigenvectors_ * w.real();
  const Eigen::VectorXd wi = eigenvectors_ * w.imag();
  for (int k = 0; k < dim_; ++k) psi(k) = cplx(wr(k), wi(k)) * phases_(k);
}

namespace {

struct SectorRhs {
  int N;
  cplx K;
  CVector operator()(double, const CVector& y) const {
    CVector out;
    apply_hamiltonian(N, y, K, out);
    return cplx(0.0, -1.0) * out;
  }
};

}  // namespace

struct SectorOdePropagator::Impl {
  int N;
  double step_tol;
  double time_scale;
  DormandPrince<CVector, SectorRhs> integ;
  std::optional<double> w0;
  double t0 = 0.0;
  double last_t = 0.0;
};

SectorOdePropagator::SectorOdePropagator(int N, cplx K, double step_tol, double time_scale)
    : impl_(new Impl{N, step_tol, time_scale,
                     DormandPrince<CVector, SectorRhs>(SectorRhs{N, K}, OdeTolerance{step_tol, step_tol}),
                     std::nullopt, 0.0, 0.0}) {}

SectorOdePropagator::~SectorOdePropagator() = default;

void SectorOdePropagator::advance(CVector& psi, double t_from, double t_to) {
  Impl& im = *impl_;
  if (!im.w0) {
    im.w0 = psi.squaredNorm();
    im.t0 = t_from;
  } else if (t_from != im.last_t) {
    im.integ.reset();
  }
  double t = t_from;
  im.integ.advance(t, psi, t_to);
  im.last_t = t_to;
  const double drift = std::abs(psi.squaredNorm() - *im.w0);
  const double elapsed = std::abs(t_to - im.t0) * im.time_scale;
  if (drift > 100.0 * im.step_tol * std::max(1.0, elapsed)) {
    std::ostringstream msg;
    msg << "sector " << im.N << ": norm drift " << drift << " exceeds 100 step_tol at scaled time " << elapsed;
    throw IntegrationError(msg.str());
  }
}

std::unique_ptr<SectorPropagator> make_sector_propagator(int N, cplx K, const PropagatorSpec& spec,
                                                         double time_scale) {
  switch (spec.method) {
    case PropagatorMethod::sector_expm:
      return std::make_unique<SectorExpmPropagator>(N, K);
    case PropagatorMethod::sector_ode:
      return std::make_unique<SectorOdePropagator>(N, K, spec.step_tol, time_scale);
    case PropagatorMethod::adaptive_frame:
      break;
  }
  throw ArgumentError("sector propagation requires method sector_expm or sector_ode");
}

}  // namespace pdc::detail
