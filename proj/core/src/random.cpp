#include "entcap/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entcap {

namespace {

// Finalizer used to decorrelate nearby seeds before feeding the generator.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

SeededRng SeededRng::for_trial(std::uint64_t root_seed, std::uint64_t trial) {
  return SeededRng(splitmix64(root_seed) ^ splitmix64(trial * 0x9e3779b97f4a7c15ULL + 1));
}

std::uint64_t SeededRng::next_u64() { return gen_(); }

double SeededRng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

Index SeededRng::uniform_index(Index n) {
  if (n < 1) throw std::invalid_argument("uniform_index: empty range");
  return static_cast<Index>(uniform() * static_cast<double>(n));
}

double SeededRng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Matrix random_gaussian(Index rows, Index cols, SeededRng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix orthonormalize_columns(const Matrix& m) {
  if (m.rows() < m.cols())
    throw std::invalid_argument("orthonormalize_columns: more columns than rows");
  Matrix q = m;
  for (Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Index k = 0; k < j; ++k)
        q.col(j) -= (q.col(k).adjoint() * q.col(j))(0, 0) * q.col(k);
    const double norm = q.col(j).norm();
    if (norm < 1e-12)
      throw std::invalid_argument("orthonormalize_columns: numerically dependent columns");
    q.col(j) /= norm;
    // Fix the free phase: largest-magnitude entry real and positive.
    Index top = 0;
    double best = -1.0;
    for (Index i = 0; i < q.rows(); ++i)
      if (std::abs(q(i, j)) > best) {
        best = std::abs(q(i, j));
        top = i;
      }
    const Complex z = q(top, j);
    if (std::abs(z) > 0.0) q.col(j) *= std::conj(z) / std::abs(z);
  }
  return q;
}

Matrix random_unitary(Index dim, SeededRng& rng) {
  return orthonormalize_columns(random_gaussian(dim, dim, rng));
}

Matrix random_hermitian(Index dim, SeededRng& rng) {
  const Matrix g = random_gaussian(dim, dim, rng);
  return (g + g.adjoint()) / 2.0;
}

DensityOperator random_density(Index dim, Index rank, SeededRng& rng) {
  if (dim < 1 || rank < 1) throw std::invalid_argument("random_density: empty dimensions");
  const Matrix g = random_gaussian(dim, rank, rng);
  const Matrix psd = g * g.adjoint();
  return make_density(psd / psd.trace());
}

}  // namespace entcap
