#include "entcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entcap/random.hpp"

namespace entcap {

namespace {

// Spectrum clamp keeping inputs faithful. Squared eigenvalue products of the
// compound marginals must stay above the relative support cutoff, so the
// floor is far coarser than the cutoff itself.
constexpr double kEigFloor = 1e-5;
constexpr double kGradStep = 1e-5;     // central finite-difference step
constexpr double kGradNormTol = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 40;
constexpr int kClampStreakLimit = 10;  // improving against the clamp => boundary
constexpr int kStallLimit = 20;        // consecutive sub-tol gains => converged

// Parameter layout: dim diagonal entries of H, then (re, im) per strict
// upper-triangle entry; the input state is exp(H) normalized to unit trace.
int param_count(Index dim) { return static_cast<int>(dim * dim); }

Matrix hermitian_from_params(const std::vector<double>& x, Index dim) {
  Matrix h = Matrix::Zero(dim, dim);
  int pos = 0;
  for (Index i = 0; i < dim; ++i) h(i, i) = x[pos++];
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j) {
      const Complex z(x[pos], x[pos + 1]);
      pos += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  return h;
}

struct ParamState {
  DensityOperator state;
  bool clamped = false;  // spectrum was floored at kEigFloor
};

ParamState state_from_params(const std::vector<double>& x, Index dim) {
  const EigenSystem es = herm_eig(hermitian_from_params(x, dim));
  const double top = es.eigenvalues[dim - 1];
  RealVector p(dim);
  for (Index i = 0; i < dim; ++i) p[i] = std::exp(es.eigenvalues[i] - top);
  p /= p.sum();
  ParamState out;
  out.clamped = p.minCoeff() < kEigFloor;
  if (out.clamped) {
    p = p.cwiseMax(kEigFloor);
    p /= p.sum();
  }
  out.state = make_density(es.eigenvectors * p.cast<Complex>().asDiagonal() *
                           es.eigenvectors.adjoint());
  return out;
}

struct Objective {
  const QuantumChannel& channel;
  EntropyType t;
  Index dim;

  double eval(const std::vector<double>& x, bool* clamped = nullptr) const {
    const ParamState ps = state_from_params(x, dim);
    if (clamped) *clamped = ps.clamped;
    return exchange_info(ps.state, channel, t);
  }
};

struct StartResult {
  std::vector<double> x;
  double f = 0.0;
  bool converged = false;
  bool boundary = false;  // stopped at or against the eigenvalue clamp
  std::vector<std::pair<int, double>> trace;
};

StartResult run_gradient_start(const Objective& obj, std::vector<double> x,
                               const OptimizerConfig& cfg, int iter_offset) {
  const int n = static_cast<int>(x.size());
  StartResult res;
  bool clamped = false;
  double f = obj.eval(x, &clamped);
  res.trace.emplace_back(iter_offset, f);
  int stall = 0;
  int clamp_streak = 0;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    std::vector<double> g(n);
    double gnorm2 = 0.0;
    for (int k = 0; k < n; ++k) {
      std::vector<double> xp = x;
      std::vector<double> xm = x;
      xp[k] += kGradStep;
      xm[k] -= kGradStep;
      g[k] = (obj.eval(xp) - obj.eval(xm)) / (2.0 * kGradStep);
      gnorm2 += g[k] * g[k];
    }
    if (std::sqrt(gnorm2) < kGradNormTol) {
      res.converged = true;
      break;
    }

    double step = 1.0;
    bool accepted = false;
    bool step_clamped = false;
    std::vector<double> xnew;
    double fnew = f;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      std::vector<double> cand = x;
      for (int k = 0; k < n; ++k) cand[k] += step * g[k];
      bool cand_clamped = false;
      const double fc = obj.eval(cand, &cand_clamped);
      if (fc >= f + kArmijo * step * gnorm2) {
        xnew = std::move(cand);
        fnew = fc;
        step_clamped = cand_clamped;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no ascent at line-search resolution
      break;
    }

    const double gain = fnew - f;
    x = std::move(xnew);
    f = fnew;
    clamped = step_clamped;
    res.trace.emplace_back(iter_offset + iter, f);

    clamp_streak = (clamped && gain > cfg.tol) ? clamp_streak + 1 : 0;
    if (clamp_streak >= kClampStreakLimit) {
      res.boundary = true;  // chasing a supremum on the state-space boundary
      break;
    }
    if (gain < cfg.tol) {
      if (++stall >= kStallLimit) {
        res.converged = true;
        break;
      }
    } else {
      stall = 0;
    }
  }

  if (clamped) {
    res.boundary = true;
    res.converged = false;
  }
  res.x = std::move(x);
  res.f = f;
  return res;
}

struct NmResult {
  std::vector<double> x;
  double f = 0.0;
  bool clamped = false;
  bool spread_converged = false;
  std::vector<std::pair<int, double>> trace;
};

// Maximizing Nelder-Mead over the same parametrization; used standalone and
// as a derivative-free polish after gradient ascent.
NmResult nelder_mead(const Objective& obj, const std::vector<double>& x0, double scale,
                     int eval_budget, double tol) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  std::vector<char> cl(n + 1);
  for (int i = 0; i < n; ++i) xs[i + 1][i] += scale;

  int evals = 0;
  auto eval_at = [&](const std::vector<double>& x, bool* clamped) {
    ++evals;
    return obj.eval(x, clamped);
  };
  for (int i = 0; i <= n; ++i) {
    bool c = false;
    fs[i] = eval_at(xs[i], &c);
    cl[i] = c;
  }

  std::vector<int> order(n + 1);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] > fs[b]; });
  };
  sort_order();

  NmResult res;
  res.trace.emplace_back(0, fs[order[0]]);
  int iter = 0;
  bool spread_small = false;
  while (evals < eval_budget) {
    ++iter;
    const int best = order[0];
    const int worst = order[n];
    if (fs[best] - fs[worst] < tol) {
      spread_small = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) centroid[k] += xs[order[i]][k] / n;

    auto blend = [&](double coeff) {
      std::vector<double> p(n);
      for (int k = 0; k < n; ++k) p[k] = centroid[k] + coeff * (centroid[k] - xs[worst][k]);
      return p;
    };
    auto replace_worst = [&](std::vector<double> p, double fp, bool cp) {
      xs[worst] = std::move(p);
      fs[worst] = fp;
      cl[worst] = cp;
    };

    bool cr = false;
    std::vector<double> xr = blend(1.0);
    const double fr = eval_at(xr, &cr);
    if (fr > fs[best]) {
      bool ce = false;
      std::vector<double> xe = blend(2.0);
      const double fe = eval_at(xe, &ce);
      if (fe > fr)
        replace_worst(std::move(xe), fe, ce);
      else
        replace_worst(std::move(xr), fr, cr);
    } else if (fr > fs[order[n - 1]]) {
      replace_worst(std::move(xr), fr, cr);
    } else {
      bool cc = false;
      std::vector<double> xc = blend(fr > fs[worst] ? 0.5 : -0.5);
      const double fc = eval_at(xc, &cc);
      if (fc > std::max(fr, fs[worst])) {
        replace_worst(std::move(xc), fc, cc);
      } else {
        for (int i = 1; i <= n; ++i) {
          const int v = order[i];
          for (int k = 0; k < n; ++k) xs[v][k] = xs[order[0]][k] + 0.5 * (xs[v][k] - xs[order[0]][k]);
          bool c = false;
          fs[v] = eval_at(xs[v], &c);
          cl[v] = c;
        }
      }
    }
    sort_order();
    if (fs[order[0]] > res.trace.back().second) res.trace.emplace_back(iter, fs[order[0]]);
  }

  const int best = order[0];
  res.x = xs[best];
  res.f = fs[best];
  res.clamped = cl[best];
  res.spread_converged = spread_small;
  return res;
}

StartResult run_gradient_with_polish(const Objective& obj, std::vector<double> x0,
                                     const OptimizerConfig& cfg) {
  StartResult sr = run_gradient_start(obj, std::move(x0), cfg, 0);
  if (sr.boundary) return sr;
  const int n = static_cast<int>(sr.x.size());
  for (int round = 0; round < 2; ++round) {
    const NmResult nm = nelder_mead(obj, sr.x, 1e-3, 200 + 40 * n, cfg.tol);
    if (nm.f <= sr.f + cfg.tol) {
      if (nm.f > sr.f && !nm.clamped) {
        sr.x = nm.x;
        sr.f = nm.f;
      }
      break;  // polish confirms the gradient optimum
    }
    // Real improvement found off the gradient path; resume ascent there.
    const int offset = sr.trace.back().first + 1;
    sr.trace.emplace_back(offset, nm.f);
    StartResult resumed = run_gradient_start(obj, nm.x, cfg, offset + 1);
    sr.x = std::move(resumed.x);
    sr.f = resumed.f;
    sr.converged = resumed.converged;
    sr.boundary = resumed.boundary;
    for (std::size_t i = 1; i < resumed.trace.size(); ++i) sr.trace.push_back(resumed.trace[i]);
    if (sr.boundary) return sr;
  }
  return sr;
}

StartResult run_nm_start(const Objective& obj, const std::vector<double>& x0,
                         const OptimizerConfig& cfg) {
  const int n = static_cast<int>(x0.size());
  const NmResult nm = nelder_mead(obj, x0, 0.5, cfg.max_iters * (n + 1), cfg.tol);
  StartResult sr;
  sr.x = nm.x;
  sr.f = nm.f;
  sr.boundary = nm.clamped;
  sr.converged = nm.spread_converged && !nm.clamped;
  sr.trace = nm.trace;
  return sr;
}

void validate_config(const OptimizerConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("optimizer: max_iters must be at least 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("optimizer: tol must be positive");
  if (cfg.restarts < 1) throw std::invalid_argument("optimizer: restarts must be at least 1");
}

}  // namespace

bool AdditivityCapacityResult::all_converged() const {
  if (!joint_report.converged) return false;
  for (const CapacityReport& r : factor_reports)
    if (!r.converged) return false;
  return true;
}

double exchange_info(const DensityOperator& s0, const QuantumChannel& c, EntropyType t) {
  return mutual_info(channel_compound(s0, c), t);
}

CapacityReport capacity(const QuantumChannel& c, EntropyType t, const OptimizerConfig& cfg) {
  validate_config(cfg);
  const Index dim = c.dim_in;
  const Objective obj{c, t, dim};
  const int n = param_count(dim);

  StartResult best;
  bool have_best = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x0(n, 0.0);  // r = 0: maximally mixed start
    if (r > 0) {
      SeededRng rng = SeededRng::for_trial(cfg.seed, static_cast<std::uint64_t>(r));
      for (double& v : x0) v = rng.gaussian();
    }
    StartResult sr = cfg.method == OptimMethod::exp_param_gradient
                         ? run_gradient_with_polish(obj, std::move(x0), cfg)
                         : run_nm_start(obj, x0, cfg);
    if (!have_best || sr.f > best.f || (sr.f == best.f && sr.converged && !best.converged)) {
      best = std::move(sr);
      have_best = true;
    }
  }

  const ParamState ps = state_from_params(best.x, dim);
  CapacityReport report;
  report.entropy_type = t;
  report.seed = cfg.seed;
  report.optimal_input = ps.state;
  report.value = exchange_info(ps.state, c, t);
  report.trace = std::move(best.trace);
  report.converged = best.converged && !best.boundary && !ps.clamped;
  return report;
}

std::pair<double, double> additivity_inputs_check(std::span<const QuantumChannel> channels,
                                                  std::span<const DensityOperator> inputs,
                                                  EntropyType t) {
  if (channels.empty() || channels.size() != inputs.size())
    throw std::invalid_argument("additivity_inputs_check: need one input per channel");
  Matrix joint_input = inputs[0].matrix();
  for (std::size_t i = 1; i < inputs.size(); ++i)
    joint_input = tensor(joint_input, inputs[i].matrix());
  const QuantumChannel joint_channel = tensor_channels(channels);
  const double joint = exchange_info(make_density(joint_input), joint_channel, t);
  double sum = 0.0;
  for (std::size_t i = 0; i < channels.size(); ++i)
    sum += exchange_info(inputs[i], channels[i], t);
  return {joint, sum};
}

AdditivityCapacityResult additivity_capacity_check(std::span<const QuantumChannel> channels,
                                                   EntropyType t, const OptimizerConfig& cfg) {
  if (channels.empty())
    throw std::invalid_argument("additivity_capacity_check: no channels given");
  Index product_dim = 1;
  for (const QuantumChannel& c : channels) product_dim *= c.dim_in;
  if (product_dim > 16)
    throw std::invalid_argument(
        "additivity_capacity_check: product input dimension exceeds 16");

  AdditivityCapacityResult res;
  res.joint_report = capacity(tensor_channels(channels), t, cfg);
  res.joint = res.joint_report.value;
  for (const QuantumChannel& c : channels) {
    res.factor_reports.push_back(capacity(c, t, cfg));
    res.sum += res.factor_reports.back().value;
  }
  return res;
}

}  // namespace entcap
