#include "entcap/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "internal.hpp"

namespace entcap {

namespace {

double magnitude(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

Matrix transpose_tilde(const Matrix& a) { return a.transpose(); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Factor keep) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != m.cols() || m.rows() != dim_a * dim_b)
    throw std::invalid_argument("partial_trace: operator side " + std::to_string(m.rows()) +
                                " does not match factors " + std::to_string(dim_a) + " x " +
                                std::to_string(dim_b));
  if (keep == Factor::a) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        for (Index k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Index k = 0; k < dim_b; ++k)
    for (Index l = 0; l < dim_b; ++l)
      for (Index i = 0; i < dim_a; ++i) out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

EigenSystem herm_eig(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() < 1)
    throw std::invalid_argument("herm_eig: matrix is not square");
  const double scale = std::max(1.0, magnitude(h));
  const double asym = magnitude(Matrix(h - h.adjoint())) / 2.0;
  if (asym > kHermitianHardLimit * scale)
    throw std::invalid_argument("herm_eig: asymmetry " + internal::num_str(asym) +
                                " exceeds the Hermitian hard limit");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(Matrix((h + h.adjoint()) / 2.0));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix apply_spectral(const EigenSystem& es, const std::function<double(double)>& f,
                      double support_cutoff) {
  const Index n = es.eigenvalues.size();
  const double lmax = n > 0 ? std::max(es.eigenvalues.maxCoeff(), 0.0) : 0.0;
  const double cut = support_cutoff * lmax;
  RealVector mapped(n);
  for (Index i = 0; i < n; ++i) {
    const double lam = es.eigenvalues[i];
    mapped[i] = lam > cut ? f(lam) : 0.0;
  }
  return es.eigenvectors * mapped.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
}

Matrix matrix_func(const Matrix& h, const std::function<double(double)>& f,
                   double support_cutoff) {
  const EigenSystem es = herm_eig(h);
  const double lmax = std::max(es.eigenvalues.maxCoeff(), 0.0);
  const double lmin = es.eigenvalues.minCoeff();
  if (lmin < -1e-8 * std::max(1.0, lmax))
    throw std::invalid_argument("matrix_func: negative eigenvalue " + internal::num_str(lmin) +
                                ", input is not positive semidefinite");
  return apply_spectral(es, f, support_cutoff);
}

Matrix matrix_sqrt(const Matrix& h, double support_cutoff) {
  return matrix_func(h, [](double x) { return std::sqrt(x); }, support_cutoff);
}

Matrix matrix_log(const Matrix& h, double support_cutoff) {
  return matrix_func(h, [](double x) { return std::log(x); }, support_cutoff);
}

Matrix matrix_inv(const Matrix& h, double support_cutoff) {
  return matrix_func(h, [](double x) { return 1.0 / x; }, support_cutoff);
}

Matrix matrix_inv_sqrt(const Matrix& h, double support_cutoff) {
  return matrix_func(h, [](double x) { return 1.0 / std::sqrt(x); }, support_cutoff);
}

Matrix support_projector(const Matrix& h, double support_cutoff) {
  return matrix_func(h, [](double) { return 1.0; }, support_cutoff);
}

}  // namespace entcap
