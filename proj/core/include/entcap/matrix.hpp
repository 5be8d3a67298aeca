#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace entcap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative spectral support cutoff: eigenvalues at or below
// cutoff * lambda_max count as zero.
inline constexpr double kSupportCutoff = 1e-12;

// Asymmetry up to the hard limit is symmetrized away silently,
// anything larger is rejected as not Hermitian.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kHermitianHardLimit = 1e-8;

struct EigenSystem {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, one column per eigenvalue
};

// Basis-fixed transposition A~ = A^T. The involution is entrywise complex
// conjugation in the computational basis, so J A† J is the plain transpose.
// Applying it twice gives A back.
Matrix transpose_tilde(const Matrix& a);

// Kronecker product with the left factor as the slow (leftmost) index.
Matrix tensor(const Matrix& a, const Matrix& b);

enum class Factor { a, b };

// Reduce an operator on a (dim_a x dim_b)-dimensional bipartite space to the
// kept factor. Probe factor A is the slow index throughout.
Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Factor keep);

// Deterministic Hermitian eigendecomposition, eigenvalues ascending.
// The input is symmetrized as (h + h†)/2 first.
EigenSystem herm_eig(const Matrix& h);

// Spectral calculus on an existing decomposition: f on eigenvalues strictly
// above support_cutoff * lambda_max, zero at or below (support convention
// for ln, inverse and inverse-sqrt).
Matrix apply_spectral(const EigenSystem& es, const std::function<double(double)>& f,
                      double support_cutoff = kSupportCutoff);

// f on the spectral support of a PSD matrix. Eigenvalues below -1e-8
// (relative to the spectral magnitude) are rejected as not PSD.
Matrix matrix_func(const Matrix& h, const std::function<double(double)>& f,
                   double support_cutoff = kSupportCutoff);

Matrix matrix_sqrt(const Matrix& h, double support_cutoff = kSupportCutoff);
Matrix matrix_log(const Matrix& h, double support_cutoff = kSupportCutoff);
// Pseudo-inverse (and its square root) on the support.
Matrix matrix_inv(const Matrix& h, double support_cutoff = kSupportCutoff);
Matrix matrix_inv_sqrt(const Matrix& h, double support_cutoff = kSupportCutoff);

// Orthoprojector onto the eigenspaces above the support cutoff.
Matrix support_projector(const Matrix& h, double support_cutoff = kSupportCutoff);

}  // namespace entcap
