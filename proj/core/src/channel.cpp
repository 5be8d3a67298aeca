#include "entcap/channel.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "internal.hpp"

namespace entcap {

namespace {

std::string format_param(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void check_probability(const std::string& name, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(name + ": parameter " + internal::num_str(p) +
                                " is outside [0, 1]");
}

Matrix pauli(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

QuantumChannel make_channel(std::vector<Matrix> kraus, std::string name) {
  if (kraus.empty()) throw std::invalid_argument("make_channel: empty Kraus list");
  const Index dim_out = kraus.front().rows();
  const Index dim_in = kraus.front().cols();
  if (dim_out < 1 || dim_in < 1)
    throw std::invalid_argument("make_channel: kraus[0] is empty");
  for (std::size_t k = 0; k < kraus.size(); ++k)
    if (kraus[k].rows() != dim_out || kraus[k].cols() != dim_in)
      throw std::invalid_argument("make_channel: kraus[" + std::to_string(k) + "] is " +
                                  std::to_string(kraus[k].rows()) + " x " +
                                  std::to_string(kraus[k].cols()) + ", expected " +
                                  std::to_string(dim_out) + " x " + std::to_string(dim_in));
  Matrix sum = Matrix::Zero(dim_in, dim_in);
  for (const Matrix& a : kraus) sum += a.adjoint() * a;
  const double dev = (sum - Matrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
  if (dev > 1e-8)
    throw std::invalid_argument("make_channel: sum of A_k† A_k deviates from identity by " +
                                internal::num_str(dev));
  return QuantumChannel{std::move(name), dim_in, dim_out, std::move(kraus)};
}

DensityOperator apply_schrodinger(const QuantumChannel& c, const DensityOperator& s) {
  if (s.dim() != c.dim_in)
    throw std::invalid_argument("apply_schrodinger: state dimension " + std::to_string(s.dim()) +
                                " does not match channel dim_in " + std::to_string(c.dim_in));
  Matrix out = Matrix::Zero(c.dim_out, c.dim_out);
  for (const Matrix& a : c.kraus) out += a * s.matrix() * a.adjoint();
  return make_density(out);
}

Matrix apply_heisenberg(const QuantumChannel& c, const Matrix& b) {
  if (b.rows() != c.dim_out || b.cols() != c.dim_out)
    throw std::invalid_argument("apply_heisenberg: operator dimension " +
                                std::to_string(b.rows()) + " does not match channel dim_out " +
                                std::to_string(c.dim_out));
  Matrix out = Matrix::Zero(c.dim_in, c.dim_in);
  for (const Matrix& a : c.kraus) out += a.adjoint() * b * a;
  return out;
}

QuantumChannel tensor_channels(std::span<const QuantumChannel> cs) {
  if (cs.empty()) throw std::invalid_argument("tensor_channels: empty channel list");
  QuantumChannel acc = cs.front();
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const QuantumChannel& next = cs[i];
    std::vector<Matrix> kraus;
    kraus.reserve(acc.kraus.size() * next.kraus.size());
    for (const Matrix& a : acc.kraus)
      for (const Matrix& b : next.kraus) kraus.push_back(tensor(a, b));
    acc = QuantumChannel{acc.name + " (x) " + next.name, acc.dim_in * next.dim_in,
                         acc.dim_out * next.dim_out, std::move(kraus)};
  }
  return acc;
}

QuantumChannel preset(const std::string& name, const std::vector<double>& params) {
  if (name == "identity") {
    if (params.size() != 1)
      throw std::invalid_argument("identity: expected one parameter (dimension)");
    const double d = params[0];
    if (d < 1 || d != std::floor(d) || d > 64)
      throw std::invalid_argument("identity: dimension " + internal::num_str(d) +
                                  " is not an integer in [1, 64]");
    const Index dim = static_cast<Index>(d);
    return make_channel({Matrix::Identity(dim, dim)}, "identity:" + std::to_string(dim));
  }
  if (name == "isometry") {
    if (params.size() < 2)
      throw std::invalid_argument("isometry: expected dim_out, dim_in, then re/im entries");
    const double dout_r = params[0];
    const double din_r = params[1];
    if (dout_r < 1 || dout_r != std::floor(dout_r) || din_r < 1 || din_r != std::floor(din_r))
      throw std::invalid_argument("isometry: dimensions must be positive integers");
    const Index dim_out = static_cast<Index>(dout_r);
    const Index dim_in = static_cast<Index>(din_r);
    const std::size_t expected = 2 + 2 * static_cast<std::size_t>(dim_out * dim_in);
    if (params.size() != expected)
      throw std::invalid_argument("isometry: expected " + std::to_string(expected) +
                                  " parameters for a " + std::to_string(dim_out) + " x " +
                                  std::to_string(dim_in) + " matrix, got " +
                                  std::to_string(params.size()));
    Matrix v(dim_out, dim_in);
    std::size_t at = 2;
    for (Index i = 0; i < dim_out; ++i)
      for (Index j = 0; j < dim_in; ++j) {
        v(i, j) = Complex(params[at], params[at + 1]);
        at += 2;
      }
    return make_channel({std::move(v)}, "isometry:" + std::to_string(dim_out) + "x" +
                                            std::to_string(dim_in));
  }
  if (name == "depolarizing") {
    if (params.size() != 1) throw std::invalid_argument("depolarizing: expected one parameter");
    const double p = params[0];
    check_probability("depolarizing", p);
    // state -> (1-p) state + p identity/2; fully depolarizing at p = 1.
    std::vector<Matrix> kraus;
    if (1.0 - 3.0 * p / 4.0 > 0.0)
      kraus.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * Matrix::Identity(2, 2));
    if (p > 0.0)
      for (int which = 1; which <= 3; ++which)
        kraus.push_back(std::sqrt(p / 4.0) * pauli(which));
    return make_channel(std::move(kraus), "depolarizing:" + format_param(p));
  }
  if (name == "dephasing") {
    if (params.size() != 1) throw std::invalid_argument("dephasing: expected one parameter");
    const double p = params[0];
    check_probability("dephasing", p);
    std::vector<Matrix> kraus;
    if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(2, 2));
    if (p > 0.0) kraus.push_back(std::sqrt(p) * pauli(3));
    return make_channel(std::move(kraus), "dephasing:" + format_param(p));
  }
  if (name == "amplitude_damping") {
    if (params.size() != 1)
      throw std::invalid_argument("amplitude_damping: expected one parameter");
    const double gamma = params[0];
    check_probability("amplitude_damping", gamma);
    Matrix k0(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    std::vector<Matrix> kraus = {std::move(k0)};
    if (gamma > 0.0) {
      Matrix k1(2, 2);
      k1 << 0, std::sqrt(gamma), 0, 0;
      kraus.push_back(std::move(k1));
    }
    return make_channel(std::move(kraus), "amplitude_damping:" + format_param(gamma));
  }
  throw std::invalid_argument(
      "preset: unknown channel '" + name +
      "'; valid presets: identity, isometry, depolarizing, dephasing, amplitude_damping");
}

QuantumChannel random_cptp(Index dim_in, Index dim_out, Index env_dim, std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || env_dim < 1)
    throw std::invalid_argument("random_cptp: dimensions must be positive");
  if (dim_out * env_dim < dim_in)
    throw std::invalid_argument("random_cptp: dim_out * env_dim = " +
                                std::to_string(dim_out * env_dim) + " is below dim_in " +
                                std::to_string(dim_in) + "; no isometry exists");
  SeededRng rng(seed);
  const Matrix v = orthonormalize_columns(random_gaussian(dim_out * env_dim, dim_in, rng));
  std::vector<Matrix> kraus;
  kraus.reserve(env_dim);
  for (Index k = 0; k < env_dim; ++k)
    kraus.push_back(v.block(k * dim_out, 0, dim_out, dim_in));
  return make_channel(std::move(kraus),
                      "random_cptp:" + std::to_string(dim_in) + "to" + std::to_string(dim_out) +
                          ",env=" + std::to_string(env_dim) + ",seed=" + std::to_string(seed));
}

CompoundState channel_compound(const DensityOperator& s0, const QuantumChannel& c) {
  if (s0.dim() != c.dim_in)
    throw std::invalid_argument("channel_compound: state dimension " + std::to_string(s0.dim()) +
                                " does not match channel dim_in " + std::to_string(c.dim_in));
  const CompoundState base = standard_compound(s0);
  const Index da = base.dim_a;
  const Matrix eye = Matrix::Identity(da, da);
  Matrix out = Matrix::Zero(da * c.dim_out, da * c.dim_out);
  for (const Matrix& a : c.kraus) {
    const Matrix lifted = tensor(eye, a);
    out += lifted * base.density.matrix() * lifted.adjoint();
  }
  return CompoundState{da, c.dim_out, make_density(out)};
}

}  // namespace entcap
