#pragma once

#include "entcap/matrix.hpp"

namespace entcap {

// Positive semidefinite unit-trace operator with its spectrum cached.
// Construct through make_density so every instance is validated.
class DensityOperator {
 public:
  DensityOperator() = default;
  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  const EigenSystem& eig() const { return eig_; }

 private:
  friend DensityOperator make_density(const Matrix& m);
  Matrix matrix_;
  EigenSystem eig_;
};

// Validate and normalize: square, Hermitian, trace within 1e-8 of one,
// eigenvalues no lower than -1e-8. Small negative eigenvalues are clamped
// to zero and the spectrum renormalized before the matrix is rebuilt.
DensityOperator make_density(const Matrix& m);

// S(s) = -sum lambda ln lambda over the nonzero spectrum, in nats.
double von_neumann_entropy(const DensityOperator& s);

// Amplitude: a matrix v with v v† the described state and Tr[v† v] = 1.
struct Amplitude {
  Matrix matrix;
};

// Standard purification Omega = sum_i sqrt(lambda_i) (conj(e_i) (x) e_i) as a
// dim^2 x 1 amplitude. The probe (slow) factor carries the conjugated
// eigenvectors, so the A-marginal of Omega Omega† is transpose_tilde(s) and
// the B-marginal is s itself. The result does not depend on the eigenbasis
// choice: entrywise Omega(i*dim + k) = sqrt(s)(k, i).
Amplitude purify(const DensityOperator& s);

}  // namespace entcap
