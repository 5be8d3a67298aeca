#include <cmath>
#include <stdexcept>

#include "test_util.hpp"

using namespace entcap;
using testutil::max_abs_diff;

namespace {

// Oracle: product compound of independent marginals.
CompoundState product_compound(const DensityOperator& rho, const DensityOperator& sigma) {
  return CompoundState{rho.dim(), sigma.dim(),
                       make_density(tensor(rho.matrix(), sigma.matrix()))};
}

Matrix unit_matrix(Index dim, Index k, Index l) {
  Matrix m = Matrix::Zero(dim, dim);
  m(k, l) = 1.0;
  return m;
}

}  // namespace

TEST_SUITE("entangle") {

TEST_CASE("compound_from_amplitude: purity, normalization, separable mixture") {
  const DensityOperator half = make_density(Matrix::Identity(2, 2) / 2.0);
  const CompoundState bell = compound_from_amplitude(purify(half), 2, 2);
  // Oracle: the maximally entangled projector, written out.
  Matrix omega = Matrix::Zero(4, 1);
  omega(0, 0) = omega(3, 0) = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(bell.density.matrix(), omega * omega.adjoint()) < 1e-12);
  CHECK(bell.density.eig().eigenvalues.maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));

  // Two orthogonal columns: rank-2 separable mixture, explicit v v†.
  Matrix v = Matrix::Zero(4, 2);
  v(0, 0) = std::sqrt(0.5);  // e0 (x) e0
  v(3, 1) = std::sqrt(0.5);  // e1 (x) e1
  const CompoundState mix = compound_from_amplitude(Amplitude{v}, 2, 2);
  CHECK(max_abs_diff(mix.density.matrix(), v * v.adjoint()) < 1e-14);
  CHECK(std::abs(mix.density.matrix().trace() - Complex(1, 0)) < 1e-14);

  Matrix unnormalized = 2.0 * v;
  CHECK_THROWS_AS(compound_from_amplitude(Amplitude{unnormalized}, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(compound_from_amplitude(Amplitude{v}, 2, 3), std::invalid_argument);
}

TEST_CASE("standard_compound entrywise against the quadratic-form oracle") {
  // Oracle: the compound state of s is fixed by
  //   Tr[(A (x) B) w] = Tr[B sqrt(s) transpose_tilde(A) sqrt(s)]
  // checked on all 16 pairs of 2x2 matrix units.
  Matrix d(2, 2);
  d << 0.9, 0, 0, 0.1;
  const DensityOperator s = make_density(d);
  const CompoundState w = standard_compound(s);
  const Matrix root = matrix_sqrt(s.matrix());
  double worst = 0.0;
  for (Index a_row = 0; a_row < 2; ++a_row)
    for (Index a_col = 0; a_col < 2; ++a_col)
      for (Index b_row = 0; b_row < 2; ++b_row)
        for (Index b_col = 0; b_col < 2; ++b_col) {
          const Matrix a = unit_matrix(2, a_row, a_col);
          const Matrix b = unit_matrix(2, b_row, b_col);
          const Complex lhs = (tensor(a, b) * w.density.matrix()).trace();
          const Complex rhs = (b * root * transpose_tilde(a) * root).trace();
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  CHECK(worst <= 1e-12);

  // Same identity for a complex random state, where transposition matters.
  SeededRng rng(31);
  const DensityOperator sc = random_density(3, 3, rng);
  const CompoundState wc = standard_compound(sc);
  const Matrix rootc = matrix_sqrt(sc.matrix());
  worst = 0.0;
  for (Index k = 0; k < 3; ++k)
    for (Index l = 0; l < 3; ++l) {
      const Matrix a = unit_matrix(3, k, l);
      const Matrix b = random_gaussian(3, 3, rng);
      const Complex lhs = (tensor(a, b) * wc.density.matrix()).trace();
      const Complex rhs = (b * rootc * transpose_tilde(a) * rootc).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("standard_compound of a pure state is a product pure state") {
  const DensityOperator pure = make_density(testutil::basis_projector(2, 0));
  const CompoundState w = standard_compound(pure);
  const Matrix expect = tensor(testutil::basis_projector(2, 0), testutil::basis_projector(2, 0));
  CHECK(max_abs_diff(w.density.matrix(), expect) < 1e-14);
}

TEST_CASE("marginals of standard and product compounds") {
  Matrix d(2, 2);
  d << 0.9, 0, 0, 0.1;
  const DensityOperator s = make_density(d);
  const auto [rho, sigma] = marginals(standard_compound(s));
  // Diagonal states are transposition-fixed, so both marginals equal s.
  CHECK(max_abs_diff(rho.matrix(), s.matrix()) <= 1e-10);
  CHECK(max_abs_diff(sigma.matrix(), s.matrix()) <= 1e-10);

  SeededRng rng(32);
  const DensityOperator sc = random_density(3, 3, rng);
  const auto [rho_c, sigma_c] = marginals(standard_compound(sc));
  CHECK(max_abs_diff(rho_c.matrix(), transpose_tilde(sc.matrix())) <= 1e-10);
  CHECK(max_abs_diff(sigma_c.matrix(), sc.matrix()) <= 1e-10);

  const DensityOperator a = random_density(2, 2, rng);
  const DensityOperator b = random_density(3, 3, rng);
  const auto [rho_p, sigma_p] = marginals(product_compound(a, b));
  CHECK(max_abs_diff(rho_p.matrix(), a.matrix()) <= 1e-12);
  CHECK(max_abs_diff(sigma_p.matrix(), b.matrix()) <= 1e-12);
}

TEST_CASE("entanglement_apply: normalization, trace identity, closed forms") {
  SeededRng rng(33);
  const DensityOperator s = random_density(3, 3, rng);
  const CompoundState w = standard_compound(s);
  const auto [rho, sigma] = marginals(w);

  CHECK(max_abs_diff(entanglement_apply(w, Matrix::Identity(3, 3)), rho.matrix()) <= 1e-12);

  // Standard compound: pi(b) = sqrt(rho) transpose_tilde(b) sqrt(rho).
  const Matrix b = random_gaussian(3, 3, rng);
  const Matrix root = matrix_sqrt(rho.matrix());
  CHECK(max_abs_diff(entanglement_apply(w, b), root * transpose_tilde(b) * root) <= 1e-12);

  // Trace identity Tr[pi(b)] = Tr[sigma b] on a random mixed compound.
  const CompoundState mixed = random_compound(2, 3, 4, rng);
  const auto [rho_m, sigma_m] = marginals(mixed);
  const Matrix bm = random_gaussian(3, 3, rng);
  const Complex lhs = entanglement_apply(mixed, bm).trace();
  const Complex rhs = (sigma_m.matrix() * bm).trace();
  CHECK(std::abs(lhs - rhs) <= 1e-12);

  // Product compound: pi(b) = rho * Tr[sigma b] (partial-trace identity).
  const DensityOperator pa = random_density(2, 2, rng);
  const DensityOperator pb = random_density(3, 3, rng);
  const CompoundState prod = product_compound(pa, pb);
  const Complex weight = (pb.matrix() * bm).trace();
  CHECK(max_abs_diff(entanglement_apply(prod, bm), weight * pa.matrix()) <= 1e-12);

  CHECK_THROWS_AS(entanglement_apply(mixed, Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("entanglement_apply is linear and positive") {
  SeededRng rng(34);
  const CompoundState w = random_compound(2, 2, 3, rng);
  const Matrix b1 = random_gaussian(2, 2, rng);
  const Matrix b2 = random_gaussian(2, 2, rng);
  const Complex c(0.3, -1.1);
  CHECK(max_abs_diff(entanglement_apply(w, b1 + c * b2),
                     entanglement_apply(w, b1) + c * entanglement_apply(w, b2)) <= 1e-12);

  const Matrix g = random_gaussian(2, 2, rng);
  const Matrix pos = g * g.adjoint();
  const EigenSystem es = herm_eig(entanglement_apply(w, pos));
  CHECK(es.eigenvalues.minCoeff() >= -1e-12);
}

TEST_CASE("decompose_entanglement of the standard compound is the identity map") {
  SeededRng rng(35);
  const DensityOperator s = random_density(3, 3, rng);
  const auto [rho, pi_map] = decompose_entanglement(standard_compound(s));
  CHECK(max_abs_diff(rho.matrix(), transpose_tilde(s.matrix())) <= 1e-10);
  REQUIRE(pi_map.dim_in == 3);
  REQUIRE(pi_map.dim_out == 3);
  CHECK(pi_map.normalization == CPNormalization::unital);

  // Oracle: transpose_tilde(pi_q(b)) = sqrt(rho~) b sqrt(rho~), so the
  // normal-form map is the identity.
  const Matrix b = random_gaussian(3, 3, rng);
  CHECK(max_abs_diff(pi_map.apply(b), b) <= 1e-9);
  CHECK(max_abs_diff(pi_map.apply(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)) <= 1e-9);
}

TEST_CASE("decompose_entanglement of a product compound is the trace map") {
  SeededRng rng(36);
  const DensityOperator pa = random_density(2, 2, rng);
  const DensityOperator pb = random_density(3, 3, rng);
  const auto [rho, pi_map] =
      decompose_entanglement(CompoundState{2, 3, make_density(tensor(pa.matrix(), pb.matrix()))});
  CHECK(max_abs_diff(rho.matrix(), pa.matrix()) <= 1e-10);
  // Pi(b) = Tr[sigma b] * support projector of rho~ (identity here).
  const Matrix b = random_gaussian(3, 3, rng);
  const Complex weight = (pb.matrix() * b).trace();
  CHECK(max_abs_diff(pi_map.apply(b), weight * Matrix::Identity(2, 2)) <= 1e-9);
}

TEST_CASE("decompose_entanglement of a pure input lives on the minimal subspace") {
  const DensityOperator s = make_density(testutil::basis_projector(2, 0));
  const auto [rho, pi_map] = decompose_entanglement(standard_compound(s));
  CHECK(pi_map.normalization == CPNormalization::support_unital);
  const Matrix e = pi_map.apply(Matrix::Identity(2, 2));
  CHECK(max_abs_diff(e, testutil::basis_projector(2, 0)) <= 1e-9);
}

TEST_CASE("compose_entanglement rebuilds the standard and product compounds") {
  SeededRng rng(37);
  const DensityOperator s = random_density(3, 3, rng);

  // (transpose of s, identity map) gives back the standard compound of s.
  CPMap identity_map;
  identity_map.dim_in = identity_map.dim_out = 3;
  identity_map.kraus = {Matrix::Identity(3, 3)};
  identity_map.normalization = CPNormalization::unital;
  const DensityOperator rho = make_density(transpose_tilde(s.matrix()));
  const CompoundState rebuilt = compose_entanglement(rho, identity_map);
  CHECK(max_abs_diff(rebuilt.density.matrix(), standard_compound(s).density.matrix()) <= 1e-9);

  // The trace map b -> Tr[sigma b] * identity gives the product compound.
  const DensityOperator pa = random_density(2, 2, rng);
  const DensityOperator pb = random_density(3, 3, rng);
  CPMap trace_map;
  trace_map.dim_in = 3;
  trace_map.dim_out = 2;
  for (Index m = 0; m < 3; ++m) {
    const double mu = pb.eig().eigenvalues[m];
    if (mu <= 0.0) continue;
    const Vector psi = pb.eig().eigenvectors.col(m);
    for (Index i = 0; i < 2; ++i) {
      Matrix k = Matrix::Zero(2, 3);
      k.row(i) = std::sqrt(mu) * psi.adjoint();
      trace_map.kraus.push_back(k);
    }
  }
  trace_map.normalization = CPNormalization::unital;
  const CompoundState prod = compose_entanglement(pa, trace_map);
  CHECK(max_abs_diff(prod.density.matrix(), tensor(pa.matrix(), pb.matrix())) <= 1e-9);
}

TEST_CASE("compose_entanglement enforces the normalization precondition") {
  SeededRng rng(38);
  const DensityOperator rho = random_density(2, 2, rng);
  CPMap bad;
  bad.dim_in = bad.dim_out = 2;
  bad.kraus = {0.5 * Matrix::Identity(2, 2)};  // Pi(I) = I/4, not a projector
  CHECK_THROWS_AS(compose_entanglement(rho, bad), std::invalid_argument);
}

TEST_CASE("decompose then compose round-trips random compound states") {
  SeededRng rng(39);
  for (int trial = 0; trial < 12; ++trial) {
    const Index da = 2 + trial % 2;
    const Index db = 2 + (trial / 2) % 2;
    const Index rank = 1 + trial % (da * db);
    const CompoundState w = random_compound(da, db, rank, rng);
    const auto [rho, pi_map] = decompose_entanglement(w);
    const CompoundState back = compose_entanglement(rho, pi_map);
    CHECK(max_abs_diff(back.density.matrix(), w.density.matrix()) <= 1e-9);
  }
}

TEST_CASE("CPMap choi matrix matches the block definition") {
  SeededRng rng(40);
  CPMap map;
  map.dim_in = 2;
  map.dim_out = 3;
  map.kraus = {random_gaussian(3, 2, rng), random_gaussian(3, 2, rng)};
  const Matrix c = map.choi();
  REQUIRE(c.rows() == 6);
  for (Index k = 0; k < 2; ++k)
    for (Index l = 0; l < 2; ++l) {
      const Matrix block = map.apply(unit_matrix(2, k, l));
      for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j)
          CHECK(std::abs(c(k * 3 + i, l * 3 + j) - block(i, j)) <= 1e-13);
    }
  // Structural complete positivity: the Choi matrix is PSD.
  CHECK(herm_eig(c).eigenvalues.minCoeff() >= -1e-10);
}

}  // TEST_SUITE
