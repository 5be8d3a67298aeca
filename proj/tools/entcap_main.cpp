// Command line front end: named computations over channel specs with
// table or CSV output. Exit codes: 0 success, 1 reported non-convergence
// or failed verification, 2 input or validation error.
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "entcap/entcap.hpp"

namespace {

using namespace entcap;

// Input or validation problem; the top level turns it into exit code 2.
struct CliError {
  std::string message;
};

[[noreturn]] void fail(std::string msg) { throw CliError{std::move(msg)}; }

double to_bits(double nats) { return nats / std::numbers::ln2; }

std::string fmt6(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6f", v);
  return b;
}

std::string fmt17(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

const char* type_tag(EntropyType t) { return t == EntropyType::a_type ? "a" : "b"; }

std::vector<EntropyType> types_of(const std::string& spec) {
  if (spec == "a") return {EntropyType::a_type};
  if (spec == "b") return {EntropyType::b_type};
  return {EntropyType::a_type, EntropyType::b_type};
}

struct Row {
  std::string command;
  std::string channel;
  std::string entropy_type;
  std::string input_spec;
  double value_nats = 0.0;
  bool converged = true;
  std::uint64_t seed = 0;
  std::string label;                // table display name
  std::vector<std::string> extras;  // table-only detail lines
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Emitter {
  bool csv = false;
  bool bits = false;
  std::vector<Row> rows;

  void add(Row r) {
    if (csv) {
      rows.push_back(std::move(r));
      return;
    }
    std::printf("%s: %s %s\n", r.label.c_str(),
                fmt6(bits ? to_bits(r.value_nats) : r.value_nats).c_str(),
                bits ? "bits" : "nats");
    for (const std::string& line : r.extras) std::printf("%s\n", line.c_str());
  }

  void note(const std::string& line) {
    if (!csv) std::printf("%s\n", line.c_str());
  }

  void finish() const {
    if (!csv) return;
    std::printf("command,channel,entropy_type,input_spec,value_nats,value_bits,converged,seed\n");
    for (const Row& r : rows)
      std::printf("%s,%s,%s,%s,%s,%s,%s,%llu\n", csv_quote(r.command).c_str(),
                  csv_quote(r.channel).c_str(), r.entropy_type.c_str(),
                  csv_quote(r.input_spec).c_str(), fmt17(r.value_nats).c_str(),
                  fmt17(to_bits(r.value_nats)).c_str(), r.converged ? "true" : "false",
                  static_cast<unsigned long long>(r.seed));
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ENTCAP_SEED")) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
      fail(std::string("ENTCAP_SEED is not an unsigned integer: '") + env + "'");
    return v;
  }
  return 0;
}

Matrix parse_matrix_text(const std::string& text, const std::string& what) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail("cannot parse " + what + ": " + e.what());
  }
  return matrix_from_json(doc, what);
}

// Grammar: maximally-mixed | pure:k | @file | inline JSON matrix.
DensityOperator parse_input_state(const std::string& spec, Index dim_hint) {
  if (spec == "maximally-mixed") {
    if (dim_hint < 1) fail("maximally-mixed input needs --dim or a channel");
    return make_density(Matrix::Identity(dim_hint, dim_hint) / double(dim_hint));
  }
  if (spec.rfind("pure:", 0) == 0) {
    if (dim_hint < 1) fail("pure:k input needs --dim or a channel");
    errno = 0;
    char* end = nullptr;
    const unsigned long k = std::strtoul(spec.c_str() + 5, &end, 10);
    if (errno != 0 || end == spec.c_str() + 5 || *end != '\0' ||
        k >= static_cast<unsigned long>(dim_hint))
      fail("pure:k needs a basis index below " + std::to_string(dim_hint) + ": '" + spec + "'");
    Matrix m = Matrix::Zero(dim_hint, dim_hint);
    m(k, k) = 1.0;
    return make_density(m);
  }
  Matrix m;
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) fail("cannot read input state file '" + spec.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    m = parse_matrix_text(ss.str(), "input state");
  } else if (!spec.empty() && spec[0] == '[') {
    m = parse_matrix_text(spec, "input state");
  } else {
    fail("unrecognized input state '" + spec +
         "' (use maximally-mixed, pure:k, @file, or an inline matrix)");
  }
  if (dim_hint > 0 && m.rows() != dim_hint)
    fail("input state is " + std::to_string(m.rows()) + "-dimensional, expected " +
         std::to_string(dim_hint));
  return make_density(m);
}

QuantumChannel channel_from_preset_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(piece.c_str(), &end);
      if (errno != 0 || end == piece.c_str() || *end != '\0')
        fail("bad preset parameter '" + piece + "' in '" + spec + "'");
      params.push_back(v);
    }
  }
  return preset(name, params);
}

struct SourcedChannel {
  QuantumChannel channel;
  std::string source;  // preset spec or file path, reusable to recompute
};

std::vector<SourcedChannel> gather_channels(const std::vector<std::string>& presets,
                                            const std::vector<std::string>& files) {
  std::vector<SourcedChannel> out;
  for (const std::string& p : presets) out.push_back({channel_from_preset_spec(p), p});
  for (const std::string& f : files) out.push_back({load_channel_spec(f), f});
  return out;
}

std::vector<std::string> matrix_lines(const Matrix& m, const std::string& indent) {
  std::vector<std::string> lines;
  for (Index i = 0; i < m.rows(); ++i) {
    std::string line = indent + "[";
    for (Index j = 0; j < m.cols(); ++j) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %.6f%+.6fi", m(i, j).real(), m(i, j).imag());
      line += buf;
    }
    line += " ]";
    lines.push_back(std::move(line));
  }
  return lines;
}

struct CommonOpts {
  std::string type = "a";
  std::string units = "nats";
  std::string output = "table";
  std::optional<std::uint64_t> seed_flag;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--type", o.type, "entropy type: a, b, or both")
      ->check(CLI::IsMember({"a", "b", "both"}));
  cmd->add_option("--units", o.units, "table units")
      ->check(CLI::IsMember({"nats", "bits"}));
  cmd->add_option("--output", o.output, "output format")
      ->check(CLI::IsMember({"table", "csv"}));
  cmd->add_option("--seed", o.seed_flag, "root seed (ENTCAP_SEED is the fallback, then 0)");
}

struct OptimOpts {
  OptimizerConfig defaults;
  int max_iters = defaults.max_iters;
  double tol = defaults.tol;
  int restarts = defaults.restarts;
  std::string method = "gradient";
};

void add_optim(CLI::App* cmd, OptimOpts& o) {
  cmd->add_option("--max-iters", o.max_iters, "optimizer iteration budget");
  cmd->add_option("--tol", o.tol, "objective-change stopping threshold, nats");
  cmd->add_option("--restarts", o.restarts, "optimizer starts (first is maximally mixed)");
  cmd->add_option("--method", o.method, "optimizer method")
      ->check(CLI::IsMember({"gradient", "nelder-mead"}));
}

OptimizerConfig make_config(const OptimOpts& o, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.max_iters = o.max_iters;
  cfg.tol = o.tol;
  cfg.restarts = o.restarts;
  cfg.seed = seed;
  cfg.method =
      o.method == "nelder-mead" ? OptimMethod::nelder_mead : OptimMethod::exp_param_gradient;
  return cfg;
}

struct ChannelOpts {
  std::vector<std::string> presets;
  std::vector<std::string> files;
};

void add_channels(CLI::App* cmd, ChannelOpts& o) {
  cmd->add_option("--preset", o.presets, "preset channel spec, name:p1,p2,...");
  cmd->add_option("--channel", o.files, "channel spec JSON file");
}

int run(int argc, char** argv) {
  CLI::App app{"entangled channel capacity toolkit"};
  app.require_subcommand(1);

  CommonOpts entropy_opts;
  std::string entropy_input = "maximally-mixed";
  Index entropy_dim = 2;
  CLI::App* entropy_cmd =
      app.add_subcommand("entropy", "entangled entropy of an input state");
  add_common(entropy_cmd, entropy_opts);
  entropy_cmd->add_option("--input", entropy_input, "input state spec");
  entropy_cmd->add_option("--dim", entropy_dim, "dimension for named input states");

  CommonOpts mi_opts;
  std::string mi_input;
  Index mi_dim_a = 0;
  Index mi_dim_b = 0;
  CLI::App* mi_cmd =
      app.add_subcommand("mutual-info", "mutual information of a compound state");
  add_common(mi_cmd, mi_opts);
  mi_cmd->add_option("--input", mi_input, "compound state spec")->required();
  mi_cmd->add_option("--dim-a", mi_dim_a, "probe dimension")->required();
  mi_cmd->add_option("--dim-b", mi_dim_b, "system dimension")->required();

  CommonOpts xc_opts;
  ChannelOpts xc_channels;
  std::string xc_input = "maximally-mixed";
  CLI::App* xc_cmd = app.add_subcommand(
      "exchange-info", "mutual information through a channel from a given input");
  add_common(xc_cmd, xc_opts);
  add_channels(xc_cmd, xc_channels);
  xc_cmd->add_option("--input", xc_input, "input state spec");

  CommonOpts cap_opts;
  ChannelOpts cap_channels;
  OptimOpts cap_optim;
  CLI::App* cap_cmd =
      app.add_subcommand("capacity", "entangled capacity of a channel");
  add_common(cap_cmd, cap_opts);
  add_channels(cap_cmd, cap_channels);
  add_optim(cap_cmd, cap_optim);

  CommonOpts add_opts;
  ChannelOpts add_channels_opt;
  OptimOpts add_optim_opt;
  CLI::App* add_cmd = app.add_subcommand(
      "additivity", "joint capacity of a channel product versus the factor sum");
  add_common(add_cmd, add_opts);
  add_channels(add_cmd, add_channels_opt);
  add_optim(add_cmd, add_optim_opt);

  CommonOpts verify_opts;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the seeded verification suite");
  add_common(verify_cmd, verify_opts);

  CLI::App* presets_cmd = app.add_subcommand("presets", "list preset channels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  if (presets_cmd->parsed()) {
    std::printf("identity           params: dim\n");
    std::printf("isometry           params: dim_out, dim_in, then row-major re, im entries\n");
    std::printf("depolarizing       params: p in [0, 1]\n");
    std::printf("dephasing          params: p in [0, 1]\n");
    std::printf("amplitude_damping  params: gamma in [0, 1]\n");
    return 0;
  }

  if (verify_cmd->parsed()) {
    const VerificationReport report = verification_suite(resolve_seed(verify_opts.seed_flag));
    std::fputs(render_report(report).c_str(), stdout);
    return report.all_passed() ? 0 : 1;
  }

  if (entropy_cmd->parsed()) {
    const std::uint64_t seed = resolve_seed(entropy_opts.seed_flag);
    const DensityOperator s = parse_input_state(entropy_input, entropy_dim);
    Emitter emit{entropy_opts.output == "csv", entropy_opts.units == "bits"};
    for (EntropyType t : types_of(entropy_opts.type)) {
      Row r;
      r.command = "entropy";
      r.channel = "-";
      r.entropy_type = type_tag(t);
      r.input_spec = entropy_input;
      r.value_nats = entangled_entropy(s, t);
      r.seed = seed;
      r.label = std::string("entangled entropy (") + type_tag(t) + ")";
      emit.add(std::move(r));
    }
    emit.finish();
    return 0;
  }

  if (mi_cmd->parsed()) {
    const std::uint64_t seed = resolve_seed(mi_opts.seed_flag);
    if (mi_dim_a < 1 || mi_dim_b < 1) fail("--dim-a and --dim-b must be positive");
    const CompoundState w{mi_dim_a, mi_dim_b,
                          parse_input_state(mi_input, mi_dim_a * mi_dim_b)};
    Emitter emit{mi_opts.output == "csv", mi_opts.units == "bits"};
    for (EntropyType t : types_of(mi_opts.type)) {
      Row r;
      r.command = "mutual-info";
      r.channel = "-";
      r.entropy_type = type_tag(t);
      r.input_spec = mi_input;
      r.value_nats = mutual_info(w, t);
      r.seed = seed;
      r.label = std::string("mutual information (") + type_tag(t) + ")";
      emit.add(std::move(r));
    }
    emit.finish();
    return 0;
  }

  if (xc_cmd->parsed()) {
    const std::uint64_t seed = resolve_seed(xc_opts.seed_flag);
    const auto sources = gather_channels(xc_channels.presets, xc_channels.files);
    if (sources.size() != 1)
      fail("exchange-info needs exactly one --preset or --channel");
    const auto& [c, src] = sources[0];
    const DensityOperator s = parse_input_state(xc_input, c.dim_in);
    Emitter emit{xc_opts.output == "csv", xc_opts.units == "bits"};
    for (EntropyType t : types_of(xc_opts.type)) {
      Row r;
      r.command = "exchange-info";
      r.channel = src;
      r.entropy_type = type_tag(t);
      r.input_spec = xc_input;
      r.value_nats = exchange_info(s, c, t);
      r.seed = seed;
      r.label = std::string("exchange information (") + type_tag(t) + ") of " + src;
      emit.add(std::move(r));
    }
    emit.finish();
    return 0;
  }

  if (cap_cmd->parsed()) {
    const std::uint64_t seed = resolve_seed(cap_opts.seed_flag);
    const auto sources = gather_channels(cap_channels.presets, cap_channels.files);
    if (sources.size() != 1) fail("capacity needs exactly one --preset or --channel");
    const auto& [c, src] = sources[0];
    const OptimizerConfig cfg = make_config(cap_optim, seed);
    Emitter emit{cap_opts.output == "csv", cap_opts.units == "bits"};
    int exit_code = 0;
    for (EntropyType t : types_of(cap_opts.type)) {
      const CapacityReport report = capacity(c, t, cfg);
      if (!report.converged) exit_code = 1;
      Row r;
      r.command = "capacity";
      r.channel = src;
      r.entropy_type = type_tag(t);
      r.input_spec = "optimized";
      r.value_nats = report.value;
      r.converged = report.converged;
      r.seed = seed;
      r.label = std::string("capacity (") + type_tag(t) + ") of " + src;
      r.extras.push_back(std::string("  converged: ") + (report.converged ? "yes" : "no"));
      r.extras.push_back("  seed: " + std::to_string(seed));
      r.extras.push_back("  maximizer:");
      for (std::string& line : matrix_lines(report.optimal_input.matrix(), "    "))
        r.extras.push_back(std::move(line));
      emit.add(std::move(r));
    }
    emit.finish();
    return exit_code;
  }

  if (add_cmd->parsed()) {
    const std::uint64_t seed = resolve_seed(add_opts.seed_flag);
    const auto sources = gather_channels(add_channels_opt.presets, add_channels_opt.files);
    if (sources.size() < 2) fail("additivity needs at least two channels");
    std::vector<QuantumChannel> channels;
    std::string joint_src;
    for (const auto& [c, src] : sources) {
      channels.push_back(c);
      joint_src += (joint_src.empty() ? "" : " (x) ") + src;
    }
    const OptimizerConfig cfg = make_config(add_optim_opt, seed);
    Emitter emit{add_opts.output == "csv", add_opts.units == "bits"};
    int exit_code = 0;
    for (EntropyType t : types_of(add_opts.type)) {
      const AdditivityCapacityResult res = additivity_capacity_check(channels, t, cfg);
      if (!res.all_converged()) exit_code = 1;
      const std::string tag = type_tag(t);

      Row joint;
      joint.command = "additivity";
      joint.channel = joint_src;
      joint.entropy_type = tag;
      joint.input_spec = "optimized";
      joint.value_nats = res.joint;
      joint.converged = res.joint_report.converged;
      joint.seed = seed;
      joint.label = "joint capacity (" + tag + ") of " + joint_src;
      joint.extras.push_back(std::string("  converged: ") +
                             (res.joint_report.converged ? "yes" : "no"));
      emit.add(std::move(joint));

      for (std::size_t i = 0; i < sources.size(); ++i) {
        Row factor;
        factor.command = "additivity";
        factor.channel = sources[i].source;
        factor.entropy_type = tag;
        factor.input_spec = "optimized";
        factor.value_nats = res.factor_reports[i].value;
        factor.converged = res.factor_reports[i].converged;
        factor.seed = seed;
        factor.label = "factor capacity (" + tag + ") of " + sources[i].source;
        factor.extras.push_back(std::string("  converged: ") +
                                (res.factor_reports[i].converged ? "yes" : "no"));
        emit.add(std::move(factor));
      }

      Row sum;
      sum.command = "additivity";
      sum.channel = "sum";
      sum.entropy_type = tag;
      sum.input_spec = "optimized";
      sum.value_nats = res.sum;
      sum.converged = res.all_converged();
      sum.seed = seed;
      sum.label = "sum of factor capacities (" + tag + ")";
      emit.add(std::move(sum));

      const double diff = res.joint - res.sum;
      emit.note("difference (joint - sum): " + fmt6(diff) + " nats");
      emit.note(std::abs(diff) <= 1e-3
                    ? "ADDITIVE within 1e-3"
                    : "NOT ADDITIVE within 1e-3 (difference " + fmt6(diff) + ")");
    }
    emit.finish();
    return exit_code;
  }

  fail("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
