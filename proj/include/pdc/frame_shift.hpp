// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "pdc/fockspace.hpp"

namespace pdc {

// Repeated application of truncated D(alpha) or S(eta) with the padded
// generator diagonalised once. Equivalent to displacement_matrix /
// squeeze_matrix (same padding, same crop) but each application costs
// O(pad * dim * cols) instead of a fresh matrix exponential.
class FrameShift {
 public:
  enum class Kind { displacement, squeeze };

  FrameShift(Kind kind, int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  // Cropped dim x dim matrix of the operator with parameter z.
  CMatrix matrix(cplx z) const;

  // block <- U(z) block, acting on the row index (block has dim() rows).
  void apply_rows(cplx z, CMatrix& block) const;
  // block <- block U(z)^T, acting on the column index (block has dim() columns).
  void apply_cols(cplx z, CMatrix& block) const;

 private:
  // Phase rotation angle e^{i phi n} that maps the real-direction operator onto z.
  double rotation_angle(cplx z) const;

  Kind kind_;
  int dim_;
  int padded_;
  Eigen::VectorXd eigenvalues_;  // of i * G, G the real-direction generator
  CMatrix top_;                  // first dim_ rows of the eigenvector matrix
};

}  // namespace pdc
