// SPDX-License-Identifier: Apache-2.0
//
// Moving-frame integration: |psi> = D2(alpha) S1(eta) |phi>, phi stored as an
// M2 x M1 coefficient matrix (pump index = row, sub-harmonic index = column).
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdc/errors.hpp"
#include "pdc/exactdyn.hpp"
#include "pdc/frame_shift.hpp"
#include "krylov.hpp"
#include "summation.hpp"

namespace pdc {

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;
constexpr int kKrylovDim = 40;

SpMat sparse_annihilation(int dim) {
  SpMat a(dim, dim);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 1; n < dim; ++n) t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SpMat crop(const SpMat& m, int dim) { return m.topLeftCorner(dim, dim); }

// Bogoliubov-transformed sub-harmonic operators in the squeezed frame:
// S^dag a S = cosh(r) a + e^{i theta} sinh(r) a^dag. Products are formed two
// levels above the frame and cropped so every truncated operator stays the
// exact matrix element of its untruncated counterpart.
struct SubOperators {
  SpMat A, A2, A2dag, AdagA;
};

SubOperators sub_operators(cplx eta, int dim) {
  const int big = dim + 2;
  const SpMat a = sparse_annihilation(big);
  const SpMat ad = SpMat(a.adjoint());
  const double r = std::abs(eta);
  const cplx e = r > 0.0 ? eta / r : cplx(1.0, 0.0);
  const SpMat A = std::cosh(r) * a + (e * std::sinh(r)) * ad;
  const SpMat Ad = SpMat(A.adjoint());
  SubOperators o;
  o.A = crop(A, dim);
  o.A2 = crop(SpMat(A * A), dim);
  o.A2dag = crop(SpMat(Ad * Ad), dim);
  o.AdagA = crop(SpMat(Ad * A), dim);
  return o;
}

// Banded operator with offsets -2, 0, +2: row n couples to columns n-2, n, n+2.
struct Band3 {
  Eigen::VectorXcd lo, mid, hi;

  static Band3 from(const SpMat& m) {
    const int d = static_cast<int>(m.rows());
    Band3 b{Eigen::VectorXcd::Zero(d), Eigen::VectorXcd::Zero(d), Eigen::VectorXcd::Zero(d)};
    const Eigen::MatrixXcd dense(m);
    for (int n = 0; n < d; ++n) {
      if (n >= 2) b.lo(n) = dense(n, n - 2);
      b.mid(n) = dense(n, n);
      if (n + 2 < d) b.hi(n) = dense(n, n + 2);
    }
    return b;
  }
};

// H' phi = (i/2) [K (b + alpha) phi (A^dag^2)^T - K^* (b^dag + alpha^*) phi (A^2)^T].
struct FrameHamiltonian {
  int m2 = 0, m1 = 0;
  cplx K;
  cplx alpha;
  Eigen::VectorXd sq;   // sqrt(1..m2-1)
  Band3 Q, R;           // A^dag^2 and A^2
  mutable CMatrix X, Y;

  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    Eigen::Map<const CMatrix> phi(in.data(), m2, m1);
    out.resize(in.size());
    Eigen::Map<CMatrix> res(out.data(), m2, m1);
    X.resize(m2, m1);
    Y.resize(m2, m1);
    const int n2 = m2 - 1;
    X = alpha * phi;
    X.topRows(n2) += sq.asDiagonal() * phi.bottomRows(n2);
    Y = std::conj(alpha) * phi;
    Y.bottomRows(n2) += sq.asDiagonal() * phi.topRows(n2);
    const cplx ck = cplx(0.0, 0.5) * K;
    const cplx cks = cplx(0.0, 0.5) * std::conj(K);
    for (int n = 0; n < m1; ++n) {
      auto col = res.col(n);
      col = (ck * Q.mid(n)) * X.col(n) - (cks * R.mid(n)) * Y.col(n);
      if (n >= 2) col += (ck * Q.lo(n)) * X.col(n - 2) - (cks * R.lo(n)) * Y.col(n - 2);
      if (n + 2 < m1) col += (ck * Q.hi(n)) * X.col(n + 2) - (cks * R.hi(n)) * Y.col(n + 2);
    }
  }
};

struct FrameMoments {
  cplx b, b2;
  double bdb = 0.0;
  cplx A, A2;
  double AdA = 0.0;
  double norm2 = 0.0;
  double leak_pump = 0.0, leak_sub = 0.0;
};

cplx expect_rows(const CMatrix& phi, const SpMat& op) {
  const CMatrix y = op * phi;
  return (phi.conjugate().cwiseProduct(y)).sum();
}

cplx expect_cols(const CMatrix& phi, const SpMat& op) {
  const CMatrix y = phi * SpMat(op.transpose());
  return (phi.conjugate().cwiseProduct(y)).sum();
}

FrameMoments frame_moments(const CMatrix& phi, const SpMat& b, const SubOperators& sub) {
  FrameMoments m;
  m.norm2 = phi.squaredNorm();
  m.b = expect_rows(phi, b);
  m.b2 = expect_rows(phi, SpMat(b * b));
  m.bdb = expect_rows(phi, SpMat(SpMat(b.adjoint()) * b)).real();
  m.A = expect_cols(phi, sub.A);
  m.A2 = expect_cols(phi, sub.A2);
  m.AdA = expect_cols(phi, sub.AdagA).real();
  const int m2 = static_cast<int>(phi.rows()), m1 = static_cast<int>(phi.cols());
  const int top2 = std::max(1, static_cast<int>(std::ceil(0.1 * m2)));
  const int top1 = std::max(1, static_cast<int>(std::ceil(0.1 * m1)));
  m.leak_pump = phi.bottomRows(top2).squaredNorm();
  m.leak_sub = phi.rightCols(top1).squaredNorm();
  return m;
}

CVector seed_column(cplx alpha1, int m1) { return coherent_amplitudes(alpha1, m1 - 1); }

}  // namespace

Trajectory evolve_adaptive_frame(const SimConfig& cfg, const PropagatorSpec& spec) {
  validate(cfg);
  const int m2 = spec.pump_frame_dim;
  const int m1 = spec.sub_frame_dim;
  if (m2 < 4 || m1 < 4) throw ConfigError("propagator: frame dimensions must be >= 4");

  Trajectory traj;
  traj.method = "exact/adaptive_frame";
  traj.config = cfg;
  traj.config.propagator = spec;
  traj.time_scale = cfg.time_scale();
  traj.tau = scaled_grid(cfg);

  const cplx K = cfg.coupling();
  const cplx alpha0 = cfg.pump_amplitude();
  const double scale = traj.time_scale;
  // The squeeze keeps the phase it has at t = 0 so successive frames commute.
  const cplx e_theta = std::abs(K * alpha0) > 0.0 ? K * alpha0 / std::abs(K * alpha0) : cplx(1.0, 0.0);

  CMatrix phi = CMatrix::Zero(m2, m1);
  phi.row(0) = seed_column(cfg.seed_alpha1, m1).transpose();
  const double kept = phi.squaredNorm();
  if (kept < 1.0 - cfg.truncation.leak_tol) {
    std::ostringstream msg;
    msg << "adaptive frame: sub-harmonic frame of " << m1 << " levels keeps seed weight " << kept;
    throw BasisTooSmallError(msg.str());
  }
  phi /= std::sqrt(kept);

  cplx alpha_f = alpha0, alpha_t = alpha0;
  double r_f = 0.0, r_t = 0.0;
  const SpMat b = sparse_annihilation(m2);
  const FrameShift disp(FrameShift::Kind::displacement, m2);
  const FrameShift squeeze(FrameShift::Kind::squeeze, m1);

  FrameHamiltonian H;
  SubOperators sub;
  auto rebuild = [&] {
    sub = sub_operators(r_f * e_theta, m1);
    H.m2 = m2;
    H.m1 = m1;
    H.K = K;
    H.alpha = alpha_f;
    H.sq = Eigen::VectorXd(m2 - 1);
    for (int m = 1; m < m2; ++m) H.sq(m - 1) = std::sqrt(static_cast<double>(m));
    H.Q = Band3::from(sub.A2dag);
    H.R = Band3::from(sub.A2);
  };
  rebuild();

  auto matvec = [&H](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { H.apply(in, out); };
  detail::LanczosExp<decltype(matvec)> krylov(matvec, kKrylovDim, spec.step_tol);

  auto check_leak = [&](const FrameMoments& fm, double tau) {
    if (fm.leak_pump > spec.frame_leak_limit || fm.leak_sub > spec.frame_leak_limit) {
      const bool pump = fm.leak_pump > spec.frame_leak_limit;
      std::ostringstream msg;
      msg << "adaptive frame: " << (pump ? "pump" : "sub-harmonic") << " basis too small ("
          << (pump ? m2 : m1) << " levels), leakage " << (pump ? fm.leak_pump : fm.leak_sub)
          << " exceeds " << spec.frame_leak_limit << " at scaled time " << tau;
      throw BasisTooSmallError(msg.str());
    }
  };

  double shed_pump = 0.0, shed_sub = 0.0;
  const double norm_budget = std::max(cfg.truncation.norm_tol, spec.frame_leak_limit);
  auto record = [&](const FrameMoments& fm, double tau) {
    Observables o;
    o.norm2 = fm.norm2;
    // Evolution is unitary within the frame, so norm loss comes from
    // re-expansion cropping; it is charged to the mode that shed more.
    if (!(std::abs(o.norm2 - 1.0) <= norm_budget)) {
      const bool pump = shed_pump >= shed_sub;
      std::ostringstream msg;
      msg << "adaptive frame: " << (pump ? "pump" : "sub-harmonic") << " basis too small ("
          << (pump ? m2 : m1) << " levels), re-expansion left norm^2 = " << o.norm2 << " at scaled time "
          << tau;
      throw BasisTooSmallError(msg.str());
    }
    o.a2 = alpha_f * fm.norm2 + fm.b;
    const cplx a2sq = alpha_f * alpha_f * fm.norm2 + 2.0 * alpha_f * fm.b + fm.b2;
    o.n2 = std::norm(alpha_f) * fm.norm2 + 2.0 * (std::conj(alpha_f) * fm.b).real() + fm.bdb;
    o.a1 = fm.A;
    o.a1sq = fm.A2;
    o.n1 = fm.AdA;
    o.var_x1 = variance_x(o.n1, o.a1, o.a1sq);
    o.var_p1 = variance_p(o.n1, o.a1, o.a1sq);
    o.var_x2 = variance_x(o.n2, o.a2, a2sq);
    o.var_p2 = variance_p(o.n2, o.a2, a2sq);
    o.manley_rowe = o.n1 + 2.0 * o.n2;
    traj.points.push_back(o);
    traj.leak_pump.push_back(fm.leak_pump);
    traj.leak_sub.push_back(fm.leak_sub);
    traj.frame_alpha.push_back(alpha_t);
    traj.frame_eta.push_back(r_t);
  };

  FrameMoments fm = frame_moments(phi, b, sub);
  record(fm, 0.0);

  Eigen::VectorXcd vec(static_cast<Eigen::Index>(m2) * m1);
  double tau = 0.0;
  for (std::size_t i = 1; i < traj.tau.size(); ++i) {
    const double target = traj.tau[i];
    while (tau < target) {
      const double h = (target - tau <= spec.dt * (1.0 + 1e-9)) ? target - tau : spec.dt;
      Eigen::Map<Eigen::VectorXcd>(vec.data(), vec.size()) = Eigen::Map<const Eigen::VectorXcd>(phi.data(), phi.size());
      krylov.apply(vec, h / scale);
      phi = Eigen::Map<const CMatrix>(vec.data(), m2, m1);
      tau = (h == target - tau) ? target : tau + h;

      fm = frame_moments(phi, b, sub);
      check_leak(fm, tau);

      // Next frame: alpha follows <a2>, the squeeze either integrates the pump
      // or is fitted to the sub-harmonic second moments.
      alpha_t = alpha_f + fm.b / fm.norm2;
      if (spec.squeeze_tracking == SqueezeTracking::pump_integral) {
        const cplx a2 = alpha_f + fm.b / fm.norm2;
        r_t += (K * a2 * std::conj(e_theta)).real() * h / scale;
      } else {
        const cplx a1 = fm.A / fm.norm2;
        const double n1c = fm.AdA / fm.norm2 - std::norm(a1);
        const double s = std::abs(fm.A2 / fm.norm2 - a1 * a1);
        const double ratio = std::min(s / (n1c + 0.5), 1.0 - 1e-15);
        r_t = 0.5 * std::atanh(ratio);
      }

      if (std::abs(alpha_t - alpha_f) + std::abs(r_t - r_f) > spec.rebase_threshold) {
        const double w0 = phi.squaredNorm();
        disp.apply_rows(alpha_f - alpha_t, phi);
        const double w1 = phi.squaredNorm();
        squeeze.apply_cols((r_f - r_t) * e_theta, phi);
        shed_pump += w0 - w1;
        shed_sub += w1 - phi.squaredNorm();
        alpha_f = alpha_t;
        r_f = r_t;
        rebuild();
        fm = frame_moments(phi, b, sub);
        check_leak(fm, tau);
      }
    }
    record(fm, tau);
  }
  return traj;
}

}  // namespace pdc
