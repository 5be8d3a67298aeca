#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entcap/capacity.hpp"

namespace entcap {

struct CheckResult {
  std::string name;
  int trials = 0;
  int violations = 0;
  double worst = 0.0;      // largest observed deviation across trials
  double threshold = 0.0;  // allowed deviation
  // Root seed, trial index and full-precision inputs of the first violation.
  std::string reproducer;
  bool passed() const { return violations == 0; }
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

using DivergenceFn =
    std::function<DivergenceResult(const DensityOperator&, const DensityOperator&)>;

// Individual sweeps, exposed so the acceptance harness can size them and
// fault-injection tests can swap the divergence under test. Every sweep
// draws its trials from SeededRng::for_trial(seed, i).

// Divergence never increases under a channel applied to both arguments.
CheckResult check_monotonicity(std::uint64_t seed, int trials, EntropyType t);
// Mutual information never increases under a probe-side channel.
CheckResult check_data_processing(std::uint64_t seed, int trials, EntropyType t);
// a-type divergence never exceeds b-type. Custom divergences override the
// defaults (used to demonstrate that a planted defect is caught).
CheckResult check_ordering(std::uint64_t seed, int trials, DivergenceFn a_fn = {},
                           DivergenceFn b_fn = {});
// Same ordering for mutual information on compound states.
CheckResult check_compound_ordering(std::uint64_t seed, int trials);
// Exchange information is additive over product channels on product inputs.
CheckResult check_additivity_inputs(std::uint64_t seed, int trials, EntropyType t);
// Identity and isometry channels attain the entangled entropy of the input.
CheckResult check_identity_exchange(std::uint64_t seed, int trials, EntropyType t);
// Entangled entropy matches its closed form on random states.
CheckResult check_entropy_closed_forms(std::uint64_t seed, int trials, EntropyType t);
// Conditional entropy of compound states is never negative.
CheckResult check_conditional_positivity(std::uint64_t seed, int trials, EntropyType t);
// decompose_entanglement then compose_entanglement restores the compound.
CheckResult check_round_trips(std::uint64_t seed, int trials);
// Tr[channel(b) s] = Tr[b channel*(s)] between the two channel actions.
CheckResult check_duality(std::uint64_t seed, int trials);
// Purification marginals match the state and its transpose.
CheckResult check_purify_marginals(std::uint64_t seed, int trials);

// The full battery at standard sizes. Bit-identical output per seed.
VerificationReport verification_suite(std::uint64_t seed);
std::string render_report(const VerificationReport& r);

}  // namespace entcap
