#include "entcap/compound.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "internal.hpp"

namespace entcap {

namespace {

// Minimal Kraus family from a PSD Choi eigendecomposition:
// K_m(i, k) = sqrt(mu_m) v_m(k * dim_out + i).
std::vector<Matrix> kraus_from_choi(const EigenSystem& es, Index dim_in, Index dim_out) {
  const double lmax = std::max(es.eigenvalues.maxCoeff(), 0.0);
  std::vector<Matrix> kraus;
  for (Index m = 0; m < es.eigenvalues.size(); ++m) {
    const double mu = es.eigenvalues[m];
    if (mu <= kSupportCutoff * lmax) continue;
    Matrix k(dim_out, dim_in);
    const double root = std::sqrt(mu);
    for (Index col = 0; col < dim_in; ++col)
      for (Index row = 0; row < dim_out; ++row)
        k(row, col) = root * es.eigenvectors(col * dim_out + row, m);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

}  // namespace

Matrix CPMap::apply(const Matrix& b) const {
  if (b.rows() != dim_in || b.cols() != dim_in)
    throw std::invalid_argument("CPMap::apply: operator dimension " + std::to_string(b.rows()) +
                                " does not match dim_in " + std::to_string(dim_in));
  if (kraus.empty()) throw std::invalid_argument("CPMap::apply: empty Kraus list");
  Matrix out = Matrix::Zero(dim_out, dim_out);
  for (const Matrix& k : kraus) out += k * b * k.adjoint();
  return out;
}

Matrix CPMap::choi() const {
  Matrix c = Matrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const Matrix& k : kraus) {
    // vec(K) with the input index slow adds K E_kl K† blocks in one outer product.
    Vector v(dim_in * dim_out);
    for (Index col = 0; col < dim_in; ++col)
      for (Index row = 0; row < dim_out; ++row) v(col * dim_out + row) = k(row, col);
    c += v * v.adjoint();
  }
  return c;
}

CompoundState compound_from_amplitude(const Amplitude& v, Index dim_a, Index dim_b) {
  if (dim_a < 1 || dim_b < 1 || v.matrix.rows() != dim_a * dim_b || v.matrix.cols() < 1)
    throw std::invalid_argument("compound_from_amplitude: amplitude rows " +
                                std::to_string(v.matrix.rows()) + " do not match factors " +
                                std::to_string(dim_a) + " x " + std::to_string(dim_b));
  const double norm_dev = std::abs((v.matrix.adjoint() * v.matrix).trace() - Complex(1, 0));
  if (norm_dev > 1e-8)
    throw std::invalid_argument("compound_from_amplitude: Tr[v†v] deviates from one by " +
                                internal::num_str(norm_dev));
  return CompoundState{dim_a, dim_b, make_density(v.matrix * v.matrix.adjoint())};
}

CompoundState standard_compound(const DensityOperator& s) {
  return compound_from_amplitude(purify(s), s.dim(), s.dim());
}

std::pair<DensityOperator, DensityOperator> marginals(const CompoundState& w) {
  const Matrix& m = w.density.matrix();
  return {make_density(partial_trace(m, w.dim_a, w.dim_b, Factor::a)),
          make_density(partial_trace(m, w.dim_a, w.dim_b, Factor::b))};
}

Matrix entanglement_apply(const CompoundState& w, const Matrix& b) {
  if (b.rows() != w.dim_b || b.cols() != w.dim_b)
    throw std::invalid_argument("entanglement_apply: operator dimension " +
                                std::to_string(b.rows()) + " does not match dim_b " +
                                std::to_string(w.dim_b));
  const Matrix& m = w.density.matrix();
  // pi(b)(i, j) = sum_kl b(k, l) varpi((i, l), (j, k)).
  Matrix out = Matrix::Zero(w.dim_a, w.dim_a);
  for (Index i = 0; i < w.dim_a; ++i)
    for (Index j = 0; j < w.dim_a; ++j) {
      Complex acc = 0.0;
      for (Index k = 0; k < w.dim_b; ++k)
        for (Index l = 0; l < w.dim_b; ++l)
          acc += b(k, l) * m(i * w.dim_b + l, j * w.dim_b + k);
      out(i, j) = acc;
    }
  return out;
}

std::pair<DensityOperator, CPMap> decompose_entanglement(const CompoundState& w) {
  const Index da = w.dim_a;
  const Index db = w.dim_b;
  const auto [rho, sigma] = marginals(w);
  const Matrix rho_tilde = transpose_tilde(rho.matrix());
  const Matrix s_inv = matrix_inv_sqrt(rho_tilde);
  const Matrix& m = w.density.matrix();

  // Choi((k,i),(l,j)) = Pi(E_kl)(i,j) with Pi the normal form of pi.
  Matrix choi(db * da, db * da);
  Matrix pi_kl(da, da);
  for (Index k = 0; k < db; ++k)
    for (Index l = 0; l < db; ++l) {
      for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) pi_kl(i, j) = m(i * db + l, j * db + k);
      const Matrix block = s_inv * transpose_tilde(pi_kl) * s_inv;
      for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) choi(k * da + i, l * da + j) = block(i, j);
    }

  const EigenSystem es = herm_eig(choi);
  const double lmax = std::max(es.eigenvalues.maxCoeff(), 0.0);
  const double lmin = es.eigenvalues.minCoeff();
  if (lmin < -1e-8 * std::max(1.0, lmax))
    throw std::runtime_error(
        "decompose_entanglement: recovered map fails complete positivity (Choi eigenvalue " +
        internal::num_str(lmin) + "); input is not a genuine compound state");

  CPMap pi_map;
  pi_map.dim_in = db;
  pi_map.dim_out = da;
  pi_map.kraus = kraus_from_choi(es, db, da);
  const double unital_dev =
      (pi_map.apply(Matrix::Identity(db, db)) - Matrix::Identity(da, da)).cwiseAbs().maxCoeff();
  pi_map.normalization =
      unital_dev <= 1e-10 ? CPNormalization::unital : CPNormalization::support_unital;
  return {rho, pi_map};
}

CompoundState compose_entanglement(const DensityOperator& rho, const CPMap& pi_map) {
  if (pi_map.dim_out != rho.dim())
    throw std::invalid_argument("compose_entanglement: map dim_out " +
                                std::to_string(pi_map.dim_out) + " does not match state dimension " +
                                std::to_string(rho.dim()));
  const Index da = rho.dim();
  const Index db = pi_map.dim_in;
  const Matrix support = support_projector(transpose_tilde(rho.matrix()));
  const double norm_dev =
      (pi_map.apply(Matrix::Identity(db, db)) - support).cwiseAbs().maxCoeff();
  if (norm_dev > 1e-8)
    throw std::invalid_argument(
        "compose_entanglement: Pi(identity) deviates from the support projector by " +
        internal::num_str(norm_dev));

  const Matrix root = matrix_sqrt(rho.matrix());
  Matrix varpi(da * db, da * db);
  Matrix e_kl = Matrix::Zero(db, db);
  for (Index k = 0; k < db; ++k)
    for (Index l = 0; l < db; ++l) {
      e_kl(k, l) = 1.0;
      const Matrix pi_b = root * transpose_tilde(pi_map.apply(e_kl)) * root;
      e_kl(k, l) = 0.0;
      for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) varpi(i * db + l, j * db + k) = pi_b(i, j);
    }
  return CompoundState{da, db, make_density(varpi)};
}

CompoundState random_compound(Index dim_a, Index dim_b, Index rank, SeededRng& rng) {
  return CompoundState{dim_a, dim_b, random_density(dim_a * dim_b, rank, rng)};
}

}  // namespace entcap
