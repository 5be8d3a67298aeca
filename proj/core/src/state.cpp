#include "entcap/state.hpp"

#include <cmath>
#include <stdexcept>

#include "internal.hpp"

namespace entcap {

DensityOperator make_density(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("make_density: matrix is not square");
  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > 1e-8)
    throw std::invalid_argument("make_density: trace deviates from one by " +
                                internal::num_str(trace_dev));
  EigenSystem es = herm_eig(m);
  const double lmin = es.eigenvalues.minCoeff();
  if (lmin < -1e-8)
    throw std::invalid_argument("make_density: negative eigenvalue " + internal::num_str(lmin));
  RealVector lam = es.eigenvalues.cwiseMax(0.0);
  const double total = lam.sum();
  if (total <= 0.0) throw std::invalid_argument("make_density: spectrum sums to zero");
  lam /= total;

  DensityOperator out;
  out.eig_ = EigenSystem{lam, es.eigenvectors};
  Matrix rebuilt = es.eigenvectors * lam.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
  out.matrix_ = (rebuilt + rebuilt.adjoint()) / 2.0;  // keep exactly Hermitian
  return out;
}

double von_neumann_entropy(const DensityOperator& s) {
  double entropy = 0.0;
  for (Index i = 0; i < s.dim(); ++i) {
    const double lam = s.eig().eigenvalues[i];
    if (lam > 0.0) entropy -= lam * std::log(lam);
  }
  return std::max(entropy, 0.0);
}

Amplitude purify(const DensityOperator& s) {
  const Index d = s.dim();
  const EigenSystem& es = s.eig();
  Matrix omega = Matrix::Zero(d * d, 1);
  for (Index m = 0; m < d; ++m) {
    const double lam = es.eigenvalues[m];
    if (lam <= 0.0) continue;
    const double root = std::sqrt(lam);
    for (Index i = 0; i < d; ++i)
      for (Index k = 0; k < d; ++k)
        omega(i * d + k, 0) += root * std::conj(es.eigenvectors(i, m)) * es.eigenvectors(k, m);
  }
  return Amplitude{std::move(omega)};
}

}  // namespace entcap
