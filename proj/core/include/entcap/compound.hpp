#pragma once

#include <utility>
#include <vector>

#include "entcap/random.hpp"
#include "entcap/state.hpp"

namespace entcap {

// State of a bipartite (probe, system) pair; probe factor A is the slow
// index, system factor B the fast one.
struct CompoundState {
  Index dim_a = 0;
  Index dim_b = 0;
  DensityOperator density;
};

enum class CPNormalization { unital, support_unital };

// Completely positive map in Kraus form, acting on dim_in-dimensional
// operators and producing dim_out-dimensional ones.
struct CPMap {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<Matrix> kraus;  // each dim_out x dim_in
  // unital when the map sends identity to identity; support_unital when it
  // sends identity to the support projector of a rank-deficient marginal.
  CPNormalization normalization = CPNormalization::unital;

  Matrix apply(const Matrix& b) const;  // sum_k K_k b K_k†
  // Choi block matrix C((k,i), (l,j)) = apply(E_kl)(i, j); PSD iff the map
  // is completely positive.
  Matrix choi() const;
};

// varpi = v v† on the bipartite space; Tr[v† v] must be 1 within 1e-8.
CompoundState compound_from_amplitude(const Amplitude& v, Index dim_a, Index dim_b);

// Purification of s as a compound state: pure, A-marginal transpose_tilde(s),
// B-marginal s.
CompoundState standard_compound(const DensityOperator& s);

// (A-marginal, B-marginal).
std::pair<DensityOperator, DensityOperator> marginals(const CompoundState& w);

// The entanglement map pi of the compound state evaluated at a system
// operator b: the partial trace over the system factor of (I (x) b) varpi.
// Satisfies pi(I) = A-marginal, Tr[pi(b)] = Tr[sigma b] for the B-marginal
// sigma, and positivity in b; for the standard compound of s it equals
// sqrt(s') transpose_tilde(b) sqrt(s') with s' = transpose_tilde(s).
Matrix entanglement_apply(const CompoundState& w, const Matrix& b);

// Recover (rho, Pi) from a compound state: rho is the A-marginal and Pi the
// normal-form map with pi(b) = sqrt(s') transpose_tilde(Pi(b)) sqrt(s'),
// s' = transpose_tilde(rho), returned in minimal Kraus form. Throws
// std::runtime_error when the recovered map fails complete positivity beyond
// tolerance, which signals an input that is not a genuine compound state.
std::pair<DensityOperator, CPMap> decompose_entanglement(const CompoundState& w);

// Rebuild the compound state of (rho, Pi). Requires Pi(identity) to match
// the support projector of transpose_tilde(rho) within 1e-8.
CompoundState compose_entanglement(const DensityOperator& rho, const CPMap& pi_map);

// Random mixed compound state of the given marginal dimensions and rank.
CompoundState random_compound(Index dim_a, Index dim_b, Index rank, SeededRng& rng);

}  // namespace entcap
