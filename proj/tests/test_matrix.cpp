#include <cmath>
#include <stdexcept>

#include "test_util.hpp"

using namespace entcap;
using testutil::max_abs_diff;

namespace {

// Closed-form eigenvalues of a real symmetric 2x2, ascending.
std::pair<double, double> sym2_eigenvalues(double a, double b, double d) {
  const double t = a + d;
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
  return {(t - disc) / 2.0, (t + disc) / 2.0};
}

}  // namespace

TEST_SUITE("matcore") {

TEST_CASE("transpose_tilde is the plain transpose and an involution") {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  Matrix expect(2, 2);
  expect << 0, 0, 1, 0;
  CHECK(max_abs_diff(transpose_tilde(a), expect) == 0.0);

  SeededRng rng(11);
  const Matrix g = random_gaussian(3, 3, rng);
  CHECK(max_abs_diff(transpose_tilde(transpose_tilde(g)), g) == 0.0);

  // On Hermitian h the transpose equals the entrywise conjugate.
  const Matrix h = random_hermitian(4, rng);
  CHECK(max_abs_diff(transpose_tilde(h), h.conjugate()) < 1e-15);
}

TEST_CASE("tensor entries, identity and trace multiplicativity") {
  SeededRng rng(12);
  const Matrix a = random_gaussian(2, 3, rng);
  const Matrix b = random_gaussian(3, 2, rng);
  const Matrix t = tensor(a, b);
  REQUIRE(t.rows() == 6);
  REQUIRE(t.cols() == 6);
  // Oracle: definition of the Kronecker product, left factor slow.
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 3; ++k)
        for (Index l = 0; l < 2; ++l)
          CHECK(std::abs(t(i * 3 + k, j * 2 + l) - a(i, j) * b(k, l)) == 0.0);

  CHECK(max_abs_diff(tensor(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                     Matrix::Identity(6, 6)) == 0.0);

  const Matrix sq_a = random_gaussian(3, 3, rng);
  const Matrix sq_b = random_gaussian(3, 3, rng);
  const Complex lhs = tensor(sq_a, sq_b).trace();
  const Complex rhs = sq_a.trace() * sq_b.trace();
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("partial_trace splits products and preserves trace") {
  SeededRng rng(13);
  const Matrix a = random_gaussian(2, 2, rng);
  const Matrix b = random_gaussian(3, 3, rng);
  const Matrix prod = tensor(a, b);
  CHECK(max_abs_diff(partial_trace(prod, 2, 3, Factor::a), a * b.trace()) < 1e-13);
  CHECK(max_abs_diff(partial_trace(prod, 2, 3, Factor::b), b * a.trace()) < 1e-13);

  const Matrix m = random_gaussian(6, 6, rng);
  // Oracle: independent summation over explicit sub-blocks.
  Matrix keep_a = Matrix::Zero(2, 2);
  for (Index k = 0; k < 3; ++k)
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) keep_a(i, j) += m(i * 3 + k, j * 3 + k);
  CHECK(max_abs_diff(partial_trace(m, 2, 3, Factor::a), keep_a) == 0.0);
  CHECK(std::abs(partial_trace(m, 2, 3, Factor::a).trace() - m.trace()) < 1e-13);
  CHECK(std::abs(partial_trace(m, 2, 3, Factor::b).trace() - m.trace()) < 1e-13);

  CHECK_THROWS_AS(partial_trace(m, 2, 2, Factor::a), std::invalid_argument);
}

TEST_CASE("partial_trace of the maximally entangled qubit projector") {
  // Omega = (|00> + |11>)/sqrt(2); both marginals are identity/2.
  Matrix omega = Matrix::Zero(4, 1);
  omega(0, 0) = 1.0 / std::sqrt(2.0);
  omega(3, 0) = 1.0 / std::sqrt(2.0);
  const Matrix proj = omega * omega.adjoint();
  const Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK(max_abs_diff(partial_trace(proj, 2, 2, Factor::a), half) < 1e-15);
  CHECK(max_abs_diff(partial_trace(proj, 2, 2, Factor::b), half) < 1e-15);
}

TEST_CASE("herm_eig matches the symmetric 2x2 closed form") {
  Matrix h(2, 2);
  h << 0.6, 0.5, 0.5, 0.4;
  const auto [lo, hi] = sym2_eigenvalues(0.6, 0.5, 0.4);
  const EigenSystem es = herm_eig(h);
  REQUIRE(es.eigenvalues.size() == 2);
  CHECK(es.eigenvalues[0] == doctest::Approx(lo).epsilon(1e-12));
  CHECK(es.eigenvalues[1] == doctest::Approx(hi).epsilon(1e-12));
  CHECK(lo < 0.0);  // this matrix is indefinite; make_density must reject it
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices up to dim 16") {
  SeededRng rng(14);
  for (Index dim : {2, 3, 5, 8, 16}) {
    const Matrix h = random_hermitian(dim, rng);
    const EigenSystem es = herm_eig(h);
    const Matrix rebuilt = es.eigenvectors *
                           es.eigenvalues.cast<Complex>().asDiagonal() *
                           es.eigenvectors.adjoint();
    const double scale = h.cwiseAbs().maxCoeff();
    CHECK(max_abs_diff(rebuilt, h) <= 1e-10 * scale);
    CHECK(max_abs_diff(es.eigenvectors.adjoint() * es.eigenvectors,
                       Matrix::Identity(dim, dim)) < 1e-12);
    for (Index i = 0; i + 1 < dim; ++i) CHECK(es.eigenvalues[i] <= es.eigenvalues[i + 1]);
  }
}

TEST_CASE("herm_eig is deterministic and rejects gross asymmetry") {
  SeededRng rng(15);
  const Matrix h = random_hermitian(5, rng);
  const EigenSystem first = herm_eig(h);
  const EigenSystem second = herm_eig(h);
  CHECK(max_abs_diff(first.eigenvectors, second.eigenvectors) == 0.0);
  CHECK((first.eigenvalues - second.eigenvalues).cwiseAbs().maxCoeff() == 0.0);

  Matrix skew = h;
  skew(0, 1) += Complex(0.0, 1e-3);
  CHECK_THROWS_AS(herm_eig(skew), std::invalid_argument);

  // Asymmetry below the hard limit is symmetrized silently.
  Matrix mild = h;
  mild(0, 1) += Complex(0.0, 1e-11);
  CHECK_NOTHROW(herm_eig(mild));
}

TEST_CASE("matrix_func on the support: named examples") {
  Matrix d40(2, 2);
  d40 << 4, 0, 0, 0;
  Matrix d20(2, 2);
  d20 << 2, 0, 0, 0;
  CHECK(max_abs_diff(matrix_sqrt(d40), d20) < 1e-14);

  // ln acts only on the support: diag(e, 0) -> diag(1, 0).
  Matrix de(2, 2);
  de << std::exp(1.0), 0, 0, 0;
  Matrix d1(2, 2);
  d1 << 1, 0, 0, 0;
  CHECK(max_abs_diff(matrix_log(de), d1) < 1e-14);

  // Pseudo-inverse inverts only the support.
  Matrix dh(2, 2);
  dh << 0.5, 0, 0, 0;
  CHECK(max_abs_diff(matrix_inv(dh), d20) < 1e-14);
  CHECK(max_abs_diff(matrix_inv_sqrt(Matrix(d40)), Matrix(0.5 * d1)) < 1e-14);
}

TEST_CASE("matrix_func round trips exp of ln on the support") {
  // Oracle: elementwise spectral exp computed from a raw eigendecomposition.
  const auto spectral_exp = [](const Matrix& h) {
    const EigenSystem es = herm_eig(h);
    RealVector mapped(es.eigenvalues.size());
    for (Index i = 0; i < mapped.size(); ++i) mapped[i] = std::exp(es.eigenvalues[i]);
    return Matrix(es.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                  es.eigenvectors.adjoint());
  };

  SeededRng rng(16);
  for (Index dim : {2, 4, 7}) {
    const Matrix g = random_gaussian(dim, dim, rng);
    const Matrix psd = g * g.adjoint();
    const Matrix back = spectral_exp(matrix_log(psd));
    CHECK(max_abs_diff(back, psd) <= 1e-9 * std::max(1.0, psd.cwiseAbs().maxCoeff()));
  }

  // Rank-deficient input: the kernel reappears as exp(0) = 1, so compare
  // after projecting back onto the support.
  const Matrix g = random_gaussian(4, 2, rng);
  const Matrix psd = g * g.adjoint();
  const Matrix e = support_projector(psd);
  const Matrix back = e * spectral_exp(matrix_log(psd)) * e;
  CHECK(max_abs_diff(back, psd) <= 1e-9 * std::max(1.0, psd.cwiseAbs().maxCoeff()));
}

TEST_CASE("matrix_func rejects indefinite input and zeroes sub-cutoff spikes") {
  Matrix bad(2, 2);
  bad << 1.0, 0, 0, -1e-6;
  CHECK_THROWS_AS(matrix_sqrt(bad), std::invalid_argument);

  // A tiny negative eigenvalue within tolerance maps to zero, not NaN.
  Matrix near(2, 2);
  near << 1.0, 0, 0, -1e-12;
  const Matrix root = matrix_sqrt(near);
  CHECK(std::isfinite(root.cwiseAbs().maxCoeff()));
  CHECK(std::abs(root(1, 1)) == 0.0);

  // Eigenvalues below cutoff * lambda_max are treated as zero.
  Matrix spike(2, 2);
  spike << 1.0, 0, 0, 1e-14;
  CHECK(std::abs(matrix_inv(spike)(1, 1)) == 0.0);
  // And strictly above the cutoff they are inverted.
  Matrix above(2, 2);
  above << 1.0, 0, 0, 1e-6;
  CHECK(std::abs(above(1, 1) * matrix_inv(above)(1, 1) - 1.0) < 1e-12);
}

TEST_CASE("support_projector is idempotent, commutes, and has rank trace") {
  SeededRng rng(17);
  const Index dim = 5;
  const Index rank = 3;
  const Matrix g = random_gaussian(dim, rank, rng);
  const Matrix psd = g * g.adjoint();  // rank 3 by construction
  const Matrix p = support_projector(psd);
  CHECK(std::abs(p.trace() - Complex(double(rank), 0.0)) < 1e-10);
  CHECK(max_abs_diff(p * p, p) < 1e-12);
  const double scale = psd.cwiseAbs().maxCoeff();
  CHECK(max_abs_diff(p * psd, psd * p) <= 1e-10 * scale);
  CHECK(max_abs_diff(p * psd, psd) <= 1e-10 * scale);

  const Matrix full = g * g.adjoint() + Matrix::Identity(dim, dim);
  CHECK(max_abs_diff(support_projector(full), Matrix::Identity(dim, dim)) < 1e-12);
}

}  // TEST_SUITE
