#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entcap/compound.hpp"

namespace entcap {

// Trace-preserving completely positive channel in Schrodinger Kraus form
// state -> sum_k A_k state A_k†, with sum_k A_k† A_k = identity. The
// Heisenberg action on observables is the dual b -> sum_k A_k† b A_k.
struct QuantumChannel {
  std::string name;
  Index dim_in = 0;   // input state dimension
  Index dim_out = 0;  // output state dimension
  std::vector<Matrix> kraus;  // each dim_out x dim_in
};

// Validates shapes and the trace-preservation sum within 1e-8.
QuantumChannel make_channel(std::vector<Matrix> kraus, std::string name);

DensityOperator apply_schrodinger(const QuantumChannel& c, const DensityOperator& s);
Matrix apply_heisenberg(const QuantumChannel& c, const Matrix& b);

// Product channel acting factor-wise; Kraus list is all products, so counts
// multiply. Leftmost channel is the slow factor.
QuantumChannel tensor_channels(std::span<const QuantumChannel> cs);

// Named channels:
//   identity      params {dim}
//   isometry      params {dim_out, dim_in, re, im, ...} row-major entries
//   depolarizing  params {p}, state -> (1-p) state + p identity/2
//   dephasing     params {p}
//   amplitude_damping  params {gamma}
// Probabilities must lie in [0, 1]; exactly-zero Kraus terms are dropped.
QuantumChannel preset(const std::string& name, const std::vector<double>& params);

// Random channel from a Stinespring isometry: Gaussian (dim_out*env_dim) x
// dim_in matrix with orthonormalized columns, sliced into env_dim Kraus
// blocks. Deterministic per seed; requires dim_out*env_dim >= dim_in.
QuantumChannel random_cptp(Index dim_in, Index dim_out, Index env_dim, std::uint64_t seed);

// Send the system half of the standard purification of s0 through c. The
// probe marginal stays transpose_tilde(s0); the system marginal becomes the
// channel output.
CompoundState channel_compound(const DensityOperator& s0, const QuantumChannel& c);

}  // namespace entcap
