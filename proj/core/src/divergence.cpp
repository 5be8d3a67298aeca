#include "entcap/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace entcap {

namespace {

// Mass of w outside the support of phi; above this the divergence is +inf.
constexpr double kSupportLeakTol = 1e-10;

bool support_dominates(const DensityOperator& w, const DensityOperator& phi) {
  const Matrix proj = support_projector(phi.matrix());
  const Matrix id = Matrix::Identity(phi.dim(), phi.dim());
  const double leak = ((id - proj) * w.matrix()).trace().real();
  return leak <= kSupportLeakTol;
}

void check_dims(const DensityOperator& w, const DensityOperator& phi) {
  if (w.dim() != phi.dim())
    throw std::invalid_argument("rel_entropy: state dimensions differ");
}

DivergenceResult infinite_result() {
  return DivergenceResult{std::numeric_limits<double>::infinity(), false};
}

}  // namespace

DivergenceResult rel_entropy_a(const DensityOperator& w, const DensityOperator& phi) {
  check_dims(w, phi);
  if (!support_dominates(w, phi)) return infinite_result();
  // Tr[w ln w] from the spectrum; ln phi restricted to the support of phi,
  // where all the mass of w lives.
  double tr_w_ln_w = 0.0;
  for (Index i = 0; i < w.dim(); ++i) {
    const double lam = w.eig().eigenvalues[i];
    if (lam > 0.0) tr_w_ln_w += lam * std::log(lam);
  }
  const double cross = (w.matrix() * matrix_log(phi.matrix())).trace().real();
  return DivergenceResult{std::max(tr_w_ln_w - cross, 0.0), true};
}

DivergenceResult rel_entropy_b(const DensityOperator& w, const DensityOperator& phi) {
  check_dims(w, phi);
  if (!support_dominates(w, phi)) return infinite_result();
  const Matrix root = matrix_sqrt(w.matrix());
  const Matrix m = root * matrix_inv(phi.matrix()) * root;
  const double value = (root * matrix_log(m) * root).trace().real();
  return DivergenceResult{std::max(value, 0.0), true};
}

DivergenceResult rel_entropy(EntropyType t, const DensityOperator& w,
                             const DensityOperator& phi) {
  return t == EntropyType::a_type ? rel_entropy_a(w, phi) : rel_entropy_b(w, phi);
}

double mutual_info(const CompoundState& w, EntropyType t) {
  const auto [rho, sigma] = marginals(w);
  const DensityOperator product = make_density(tensor(rho.matrix(), sigma.matrix()));
  const DivergenceResult r = rel_entropy(t, w.density, product);
  if (!r.finite())
    throw std::runtime_error(
        "mutual_info: compound state escapes the support of its marginal product");
  return r.value;
}

double entangled_entropy(const DensityOperator& s, EntropyType t) {
  return mutual_info(standard_compound(s), t);
}

double conditional_entropy(const CompoundState& w, EntropyType t) {
  const auto [rho, sigma] = marginals(w);
  return entangled_entropy(sigma, t) - mutual_info(w, t);
}

std::pair<double, double> monotonicity_check(const DensityOperator& w,
                                             const DensityOperator& phi,
                                             const QuantumChannel& k, EntropyType t) {
  const DivergenceResult before = rel_entropy(t, w, phi);
  const DivergenceResult after =
      rel_entropy(t, apply_schrodinger(k, w), apply_schrodinger(k, phi));
  return {after.value, before.value};
}

}  // namespace entcap
