#pragma once

#include <utility>

#include "entcap/channel.hpp"

namespace entcap {

// a_type: the standard quantum relative entropy Tr[w (ln w - ln phi)].
// b_type: Tr[sqrt(w) ln(sqrt(w) pinv(phi) sqrt(w)) sqrt(w)], never below
// the a-type value. Both are in nats.
enum class EntropyType { a_type, b_type };

struct DivergenceResult {
  double value = 0.0;  // +infinity when the support condition fails
  bool support_ok = true;
  bool finite() const { return support_ok; }
};

// +infinity iff the support of w leaks outside the support of phi by more
// than 1e-10 in trace mass.
DivergenceResult rel_entropy_a(const DensityOperator& w, const DensityOperator& phi);
DivergenceResult rel_entropy_b(const DensityOperator& w, const DensityOperator& phi);
DivergenceResult rel_entropy(EntropyType t, const DensityOperator& w, const DensityOperator& phi);

// Divergence of the compound state from the product of its own marginals.
double mutual_info(const CompoundState& w, EntropyType t);

// Mutual information of the standard compound of s: the largest over all
// compounds with system marginal s. Closed forms: twice the von Neumann
// entropy for a_type, ln of the summed reciprocal spectrum for b_type.
double entangled_entropy(const DensityOperator& s, EntropyType t);

// entangled_entropy(B-marginal) - mutual_info(w); never negative.
double conditional_entropy(const CompoundState& w, EntropyType t);

// Divergence pair under a Schrodinger channel on both arguments:
// (after, before); monotonicity means after <= before.
std::pair<double, double> monotonicity_check(const DensityOperator& w,
                                             const DensityOperator& phi,
                                             const QuantumChannel& k, EntropyType t);

}  // namespace entcap
