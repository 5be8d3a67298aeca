#pragma once

#include <cstdint>
#include <random>

#include "entcap/state.hpp"

namespace entcap {

// Deterministic random source with a platform-independent Gaussian sampler.
// Trial streams derive from a root seed by index, so sweeps draw the same
// inputs regardless of evaluation order.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  static SeededRng for_trial(std::uint64_t root_seed, std::uint64_t trial);

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53-bit resolution.
  double uniform();
  // Index in [0, n).
  Index uniform_index(Index n);
  // Standard normal via Box-Muller; avoids distribution objects whose
  // sequences differ across standard library implementations.
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Entries independently Complex(gaussian, gaussian).
Matrix random_gaussian(Index rows, Index cols, SeededRng& rng);

// Modified Gram-Schmidt with re-orthogonalization; each column's phase is
// fixed by making its largest-magnitude entry real and positive. Requires
// rows >= cols and numerically independent columns.
Matrix orthonormalize_columns(const Matrix& m);

Matrix random_unitary(Index dim, SeededRng& rng);
Matrix random_hermitian(Index dim, SeededRng& rng);

// G G† / Tr[G G†] for a dim x rank Gaussian G: full support when
// rank >= dim, rank-deficient otherwise.
DensityOperator random_density(Index dim, Index rank, SeededRng& rng);

}  // namespace entcap
