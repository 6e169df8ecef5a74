// SPDX-License-Identifier: Apache-2.0
#include "pdc/frame_shift.hpp"

#include <cmath>

#include "pdc/errors.hpp"

namespace pdc {

FrameShift::FrameShift(Kind kind, int dim) : kind_(kind), dim_(dim), padded_(padded_dimension(dim)) {
  if (dim < 1) throw ArgumentError("FrameShift: dim must be >= 1");
  const CMatrix a = annihilation_matrix(padded_);
  CMatrix gen;
  if (kind_ == Kind::displacement) {
    gen = a.adjoint() - a;
  } else {
    const CMatrix a2 = a * a;
    gen = 0.5 * (a2.adjoint() - a2);
  }
  const CMatrix herm = cplx(0.0, 1.0) * gen;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  if (es.info() != Eigen::Success) throw IntegrationError("FrameShift: eigensolver failed");
  eigenvalues_ = es.eigenvalues();
  top_ = es.eigenvectors().topRows(dim_);
}

double FrameShift::rotation_angle(cplx z) const {
  const double theta = std::arg(z);
  return kind_ == Kind::displacement ? theta : 0.5 * theta;
}

CMatrix FrameShift::matrix(cplx z) const {
  CMatrix m = CMatrix::Identity(dim_, dim_);
  apply_rows(z, m);
  return m;
}

void FrameShift::apply_rows(cplx z, CMatrix& block) const {
  if (block.rows() != dim_) throw ArgumentError("FrameShift::apply_rows: row count mismatch");
  const double x = std::abs(z);
  if (x == 0.0) return;
  const double phi = rotation_angle(z);
  // U(z) = R(phi) exp(x G) R(phi)^dag with R = diag(e^{i phi n}); exp(x G) = V e^{-i x L} V^dag.
  for (int n = 0; n < dim_; ++n) block.row(n) *= std::polar(1.0, -phi * n);
  CMatrix y = top_.adjoint() * block;
  for (int j = 0; j < padded_; ++j) y.row(j) *= std::polar(1.0, -x * eigenvalues_(j));
  block.noalias() = top_ * y;
  for (int n = 0; n < dim_; ++n) block.row(n) *= std::polar(1.0, phi * n);
}

void FrameShift::apply_cols(cplx z, CMatrix& block) const {
  CMatrix t = block.transpose();
  apply_rows(z, t);
  block = t.transpose();
}

}  // namespace pdc
