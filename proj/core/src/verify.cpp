#include "entcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "entcap/random.hpp"
#include "internal.hpp"

namespace entcap {

namespace {

const char* type_tag(EntropyType t) { return t == EntropyType::a_type ? "a" : "b"; }

// Accumulates a sweep: worst deviation, violation count, and the full
// precision inputs of the first violation.
class SweepRecorder {
 public:
  SweepRecorder(std::string name, std::uint64_t seed, double threshold)
      : seed_(seed) {
    res_.name = std::move(name);
    res_.threshold = threshold;
  }

  template <typename Repro>
  void record(int trial, double dev, Repro&& repro) {
    ++res_.trials;
    if (res_.trials == 1 || dev > res_.worst) res_.worst = dev;
    if (dev > res_.threshold) {
      if (res_.violations == 0) {
        char head[64];
        std::snprintf(head, sizeof head, "seed=%llu trial=%d ",
                      static_cast<unsigned long long>(seed_), trial);
        res_.reproducer = std::string(head) + repro();
      }
      ++res_.violations;
    }
  }

  CheckResult take() { return std::move(res_); }

 private:
  CheckResult res_;
  std::uint64_t seed_;
};

std::string channel_str(const QuantumChannel& c) {
  std::string out = "channel=" + c.name;
  for (std::size_t k = 0; k < c.kraus.size(); ++k)
    out += " kraus[" + std::to_string(k) + "]=" + internal::matrix_str(c.kraus[k]);
  return out;
}

double max_entry_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

bool VerificationReport::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed()) return false;
  return true;
}

CheckResult check_monotonicity(std::uint64_t seed, int trials, EntropyType t) {
  SweepRecorder rec(std::string("monotonicity.") + type_tag(t), seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index dim = 2 + rng.uniform_index(2);
    const DensityOperator w = random_density(dim, 1 + rng.uniform_index(dim), rng);
    const DensityOperator phi = random_density(dim, dim, rng);
    const Index dout = 2 + rng.uniform_index(2);
    const QuantumChannel k = random_cptp(dim, dout, 2, rng.next_u64());
    const auto [after, before] = monotonicity_check(w, phi, k, t);
    rec.record(i, after - before, [&] {
      return "w=" + internal::matrix_str(w.matrix()) +
             " phi=" + internal::matrix_str(phi.matrix()) + " " + channel_str(k);
    });
  }
  return rec.take();
}

CheckResult check_data_processing(std::uint64_t seed, int trials, EntropyType t) {
  SweepRecorder rec(std::string("data_processing.") + type_tag(t), seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index da = 2 + rng.uniform_index(2);
    const Index db = 2 + rng.uniform_index(2);
    const CompoundState w = random_compound(da, db, 1 + rng.uniform_index(da * db), rng);
    const Index dout = 2 + rng.uniform_index(2);
    const QuantumChannel k = random_cptp(da, dout, 2, rng.next_u64());
    const std::vector<QuantumChannel> parts = {k, preset("identity", {double(db)})};
    const QuantumChannel lifted = tensor_channels(parts);
    const CompoundState pushed{dout, db, apply_schrodinger(lifted, w.density)};
    rec.record(i, mutual_info(pushed, t) - mutual_info(w, t), [&] {
      return "compound=" + internal::matrix_str(w.density.matrix()) + " " + channel_str(k);
    });
  }
  return rec.take();
}

CheckResult check_ordering(std::uint64_t seed, int trials, DivergenceFn a_fn,
                           DivergenceFn b_fn) {
  if (!a_fn) a_fn = [](const DensityOperator& w, const DensityOperator& phi) {
    return rel_entropy_a(w, phi);
  };
  if (!b_fn) b_fn = [](const DensityOperator& w, const DensityOperator& phi) {
    return rel_entropy_b(w, phi);
  };
  SweepRecorder rec("ordering", seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index dim = 2 + rng.uniform_index(2);
    const DensityOperator w = random_density(dim, dim, rng);
    const DensityOperator phi = random_density(dim, dim, rng);
    rec.record(i, a_fn(w, phi).value - b_fn(w, phi).value, [&] {
      return "w=" + internal::matrix_str(w.matrix()) +
             " phi=" + internal::matrix_str(phi.matrix());
    });
  }
  return rec.take();
}

CheckResult check_compound_ordering(std::uint64_t seed, int trials) {
  SweepRecorder rec("compound_ordering", seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index da = 2 + rng.uniform_index(2);
    const Index db = 2 + rng.uniform_index(2);
    const CompoundState w = random_compound(da, db, 1 + rng.uniform_index(da * db), rng);
    rec.record(i,
               mutual_info(w, EntropyType::a_type) - mutual_info(w, EntropyType::b_type),
               [&] { return "compound=" + internal::matrix_str(w.density.matrix()); });
  }
  return rec.take();
}

CheckResult check_additivity_inputs(std::uint64_t seed, int trials, EntropyType t) {
  SweepRecorder rec(std::string("additivity_inputs.") + type_tag(t), seed, 1e-8);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const std::vector<QuantumChannel> channels = {random_cptp(2, 2, 2, rng.next_u64()),
                                                  random_cptp(2, 2, 2, rng.next_u64())};
    const std::vector<DensityOperator> inputs = {random_density(2, 2, rng),
                                                 random_density(2, 2, rng)};
    const auto [joint, sum] = additivity_inputs_check(channels, inputs, t);
    rec.record(i, std::abs(joint - sum), [&] {
      return "input0=" + internal::matrix_str(inputs[0].matrix()) +
             " input1=" + internal::matrix_str(inputs[1].matrix()) + " " +
             channel_str(channels[0]) + " " + channel_str(channels[1]);
    });
  }
  return rec.take();
}

CheckResult check_identity_exchange(std::uint64_t seed, int trials, EntropyType t) {
  SweepRecorder rec(std::string("identity_exchange.") + type_tag(t), seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index dim = 2 + rng.uniform_index(2);
    const DensityOperator s = random_density(dim, dim, rng);
    // Odd trials embed through a random isometry instead of the identity;
    // both preserve the entangled entropy of the input.
    QuantumChannel c = preset("identity", {double(dim)});
    if (i % 2 == 1) {
      std::vector<Matrix> v = {orthonormalize_columns(random_gaussian(dim + 1, dim, rng))};
      c = make_channel(std::move(v), "random_isometry");
    }
    rec.record(i, std::abs(exchange_info(s, c, t) - entangled_entropy(s, t)), [&] {
      return "s=" + internal::matrix_str(s.matrix()) + " " + channel_str(c);
    });
  }
  return rec.take();
}

CheckResult check_entropy_closed_forms(std::uint64_t seed, int trials, EntropyType t) {
  SweepRecorder rec(std::string("entropy_closed_forms.") + type_tag(t), seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index dim = 2 + rng.uniform_index(3);
    const DensityOperator s = random_density(dim, dim, rng);
    double closed = 0.0;
    if (t == EntropyType::a_type) {
      closed = 2.0 * von_neumann_entropy(s);
    } else {
      double recip = 0.0;
      for (Index k = 0; k < dim; ++k) recip += 1.0 / s.eig().eigenvalues[k];
      closed = std::log(recip);
    }
    rec.record(i, std::abs(entangled_entropy(s, t) - closed),
               [&] { return "s=" + internal::matrix_str(s.matrix()); });
  }
  return rec.take();
}

CheckResult check_conditional_positivity(std::uint64_t seed, int trials, EntropyType t) {
  SweepRecorder rec(std::string("conditional_positivity.") + type_tag(t), seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index da = 2 + rng.uniform_index(2);
    const Index db = 2 + rng.uniform_index(2);
    const CompoundState w = random_compound(da, db, 1 + rng.uniform_index(da * db), rng);
    rec.record(i, -conditional_entropy(w, t),
               [&] { return "compound=" + internal::matrix_str(w.density.matrix()); });
  }
  return rec.take();
}

CheckResult check_round_trips(std::uint64_t seed, int trials) {
  SweepRecorder rec("round_trips", seed, 1e-9);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index da = 2 + rng.uniform_index(2);
    const Index db = 2 + rng.uniform_index(2);
    const CompoundState w = random_compound(da, db, 1 + rng.uniform_index(da * db), rng);
    auto repro = [&] { return "compound=" + internal::matrix_str(w.density.matrix()); };
    try {
      const auto [rho, pi_map] = decompose_entanglement(w);
      const CompoundState rebuilt = compose_entanglement(rho, pi_map);
      rec.record(i, max_entry_diff(rebuilt.density.matrix(), w.density.matrix()), repro);
    } catch (const std::exception&) {
      rec.record(i, std::numeric_limits<double>::infinity(), repro);
    }
  }
  return rec.take();
}

CheckResult check_duality(std::uint64_t seed, int trials) {
  SweepRecorder rec("duality", seed, 1e-10);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index din = 2 + rng.uniform_index(2);
    const Index dout = 2 + rng.uniform_index(2);
    const QuantumChannel c = random_cptp(din, dout, 2, rng.next_u64());
    const DensityOperator s = random_density(din, din, rng);
    const Matrix b = random_hermitian(dout, rng);
    const double lhs = (apply_schrodinger(c, s).matrix() * b).trace().real();
    const double rhs = (s.matrix() * apply_heisenberg(c, b)).trace().real();
    rec.record(i, std::abs(lhs - rhs), [&] {
      return "s=" + internal::matrix_str(s.matrix()) +
             " b=" + internal::matrix_str(b) + " " + channel_str(c);
    });
  }
  return rec.take();
}

CheckResult check_purify_marginals(std::uint64_t seed, int trials) {
  SweepRecorder rec("purify_marginals", seed, 1e-10);
  for (int i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng::for_trial(seed, i);
    const Index dim = 2 + rng.uniform_index(7);
    const DensityOperator s = random_density(dim, 1 + rng.uniform_index(dim), rng);
    const CompoundState w = compound_from_amplitude(purify(s), dim, dim);
    const auto [ma, mb] = marginals(w);
    const double dev = std::max(max_entry_diff(mb.matrix(), s.matrix()),
                                max_entry_diff(ma.matrix(), transpose_tilde(s.matrix())));
    rec.record(i, dev, [&] { return "s=" + internal::matrix_str(s.matrix()); });
  }
  return rec.take();
}

VerificationReport verification_suite(std::uint64_t seed) {
  VerificationReport report;
  report.seed = seed;
  // Distinct derived seeds decorrelate the sweeps.
  std::uint64_t sub = 0;
  const auto next_seed = [&] { return SeededRng::for_trial(seed, sub++).next_u64(); };
  for (EntropyType t : {EntropyType::a_type, EntropyType::b_type}) {
    report.checks.push_back(check_monotonicity(next_seed(), 500, t));
    report.checks.push_back(check_data_processing(next_seed(), 200, t));
    report.checks.push_back(check_additivity_inputs(next_seed(), 50, t));
    report.checks.push_back(check_identity_exchange(next_seed(), 50, t));
    report.checks.push_back(check_entropy_closed_forms(next_seed(), 100, t));
    report.checks.push_back(check_conditional_positivity(next_seed(), 200, t));
  }
  report.checks.push_back(check_ordering(next_seed(), 1000));
  report.checks.push_back(check_compound_ordering(next_seed(), 200));
  report.checks.push_back(check_round_trips(next_seed(), 50));
  report.checks.push_back(check_duality(next_seed(), 100));
  report.checks.push_back(check_purify_marginals(next_seed(), 50));
  return report;
}

std::string render_report(const VerificationReport& r) {
  std::string out = "verification suite  seed=" + std::to_string(r.seed) + "\n";
  int failed = 0;
  for (const CheckResult& c : r.checks) {
    char line[160];
    std::snprintf(line, sizeof line,
                  "  %-28s trials=%-5d violations=%-4d worst=%+.3e  threshold=%.1e  %s\n",
                  c.name.c_str(), c.trials, c.violations, c.worst, c.threshold,
                  c.passed() ? "PASS" : "FAIL");
    out += line;
    if (!c.passed()) {
      ++failed;
      out += "    first violation: " + c.reproducer + "\n";
    }
  }
  if (failed == 0)
    out += "ALL CHECKS PASSED (" + std::to_string(r.checks.size()) + " checks)\n";
  else
    out += std::to_string(failed) + " CHECKS FAILED of " +
           std::to_string(r.checks.size()) + "\n";
  return out;
}

}  // namespace entcap
