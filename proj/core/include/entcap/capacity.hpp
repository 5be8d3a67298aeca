#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "entcap/divergence.hpp"

namespace entcap {

enum class OptimMethod { exp_param_gradient, nelder_mead };

struct OptimizerConfig {
  int max_iters = 2000;
  double tol = 1e-9;  // stopping threshold on objective change, nats
  int restarts = 8;   // first start is the maximally mixed state
  std::uint64_t seed = 0;
  OptimMethod method = OptimMethod::exp_param_gradient;
};

struct CapacityReport {
  double value = 0.0;  // nats
  DensityOperator optimal_input;
  EntropyType entropy_type = EntropyType::a_type;
  std::vector<std::pair<int, double>> trace;  // (iteration, objective) of the best restart
  std::uint64_t seed = 0;
  // false when the run hit the iteration budget or kept improving against
  // the boundary eigenvalue clamp (a supremum not attained inside the
  // faithful states).
  bool converged = false;
};

// Mutual information of the compound state obtained by sending the system
// half of the standard purification of s0 through the channel.
double exchange_info(const DensityOperator& s0, const QuantumChannel& c, EntropyType t);

// sup over input states of exchange_info, by gradient ascent over the
// exp(H)/Tr exp(H) parametrization with multi-restart, or by Nelder-Mead.
CapacityReport capacity(const QuantumChannel& c, EntropyType t, const OptimizerConfig& cfg = {});

// (joint, sum): exchange information of the product channel on the product
// of the given inputs versus the sum over factors. Equal within 1e-8.
std::pair<double, double> additivity_inputs_check(std::span<const QuantumChannel> channels,
                                                  std::span<const DensityOperator> inputs,
                                                  EntropyType t);

struct AdditivityCapacityResult {
  double joint = 0.0;  // capacity of the product channel over the full product input space
  double sum = 0.0;    // sum of single-factor capacities
  CapacityReport joint_report;
  std::vector<CapacityReport> factor_reports;
  bool all_converged() const;
};

// Rejects product input dimensions above 16; each factor capacity and the
// joint capacity are optimized independently, non-convergence is flagged
// per factor in the reports.
AdditivityCapacityResult additivity_capacity_check(std::span<const QuantumChannel> channels,
                                                   EntropyType t,
                                                   const OptimizerConfig& cfg = {});

}  // namespace entcap
